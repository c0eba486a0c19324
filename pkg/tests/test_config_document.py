from __future__ import annotations

import json

import pytest

from qpdt.config import Config, threads_from_env
from qpdt.document import Document, dump_document, parse_input
from qpdt.errors import InvariantViolation, ParseError
from qpdt.potential import Potential

TRIANGLE_DOC = {
    "quiver": {"n": 3, "arrows": [[0, 1, 0], [0, 0, 1], [1, 0, 0]]},
    "potential": [{"cycle": ["a", "b", "c"], "coeff": "1"}],
    "modules": {"s1": {"dim": [1, 0, 0], "field": 2, "mats": {}}},
    "params": {"k": [1], "i": 1, "trunc": 2},
}


def test_config_defaults_and_updates():
    cfg = Config()
    assert (cfg.N, cfg.primes, cfg.max_dim) == (6, (2, 3, 5), 4)
    assert cfg.updated(N=3, primes=None).N == 3
    assert cfg.updated(primes=[2, 3]).primes == (2, 3)
    assert Config(**{k: (tuple(v) if k == "primes" else v) for k, v in cfg.to_json().items()}) == cfg


@pytest.mark.parametrize("changes", [{"N": 0}, {"primes": ()}, {"primes": (3, 2)}, {"primes": (2, 4)},
                                     {"primes": (1, 2)}, {"max_dim": -1}])
def test_config_validation(changes):
    with pytest.raises(InvariantViolation):
        Config().updated(**changes)


def test_threads_from_env(monkeypatch):
    monkeypatch.delenv("QDT_THREADS", raising=False)
    assert threads_from_env() == 1
    monkeypatch.setenv("QDT_THREADS", "3")
    assert threads_from_env() == 3
    monkeypatch.setenv("QDT_THREADS", "0")
    assert threads_from_env() == 1
    monkeypatch.setenv("QDT_THREADS", "many")
    with pytest.raises(InvariantViolation):
        threads_from_env()


def test_parse_triangle_document():
    doc = parse_input(json.dumps(TRIANGLE_DOC))
    assert doc.qp.potential == Potential({("a", "b", "c"): 1})
    assert [a for a, _, _ in doc.qp.arrows] == ["a", "b", "c"]
    assert doc.modules["s1"].dim == (1, 0, 0)
    assert doc.params == {"k": [1], "i": 1, "trunc": 2}


def test_round_trip():
    doc = parse_input(json.dumps(TRIANGLE_DOC).encode())
    again = parse_input(dump_document(doc))
    assert again.qp == doc.qp and again.params == doc.params
    assert again.modules["s1"].dim == doc.modules["s1"].dim


def test_accepts_qp_json_at_top_level(triangle):
    doc = parse_input(json.dumps(triangle.to_json()))
    assert doc.qp == triangle


def test_explicit_labels_as_lists():
    obj = {"quiver": {"arrows": [[0, 1], [0, 0]]}, "labels": [["f", 1, 2]]}
    assert parse_input(json.dumps(obj)).qp.labels() == ["f"]


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError, match="line 2, column"):
        parse_input('{"quiver":\n  ]')


@pytest.mark.parametrize("obj, err, where", [
    ({"quiver": {"arrows": "x"}}, ParseError, "quiver.arrows"),
    ({"quiver": {"arrows": [[0, 1.5], [0, 0]]}}, ParseError, r"quiver.arrows\[0\]\[1\]"),
    ({"quiver": {"arrows": [[1, 0], [0, 0]]}}, InvariantViolation, "loop"),
    ({"quiver": {"arrows": [[0, 1], [1, 0]]}}, InvariantViolation, "2-cycle"),
    ({"quiver": {"arrows": [[0, 1], [0, 0]]}, "params": {"zzz": 1}}, ParseError, "params.zzz"),
    ({"quiver": {"arrows": [[0, 1], [0, 0]]}, "potential": [{"cycle": ["a"], "coeff": "x/y"}]},
     ParseError, "coeff"),
    ({"quiver": {"arrows": [[0, 1], [0, 0]]}, "potential": [{"cycle": ["a", "a"]}]},
     InvariantViolation, "potential"),
    ({"quiver": {"arrows": [[0, 1], [0, 0]]}, "labels": [["f", 1, 2], ["g", 1, 2]]},
     InvariantViolation, "do not match the arrow counts"),
    ([1, 2], ParseError, "document"),
])
def test_invalid_documents(obj, err, where):
    with pytest.raises(err, match=where):
        parse_input(json.dumps(obj))


def test_module_must_satisfy_relations():
    obj = dict(TRIANGLE_DOC)
    obj["modules"] = {"bad": {"dim": [1, 1, 1], "mats": {"a": [[1]], "b": [[1]]}}}
    with pytest.raises(InvariantViolation, match="bad"):
        parse_input(json.dumps(obj))


def test_document_quiver_property(triangle):
    assert Document(triangle).quiver == triangle.quiver()
