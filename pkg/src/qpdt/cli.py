"""Command-line front end.

Every command reads an optional JSON document (``--input``), applies flag
overrides and prints either a JSON envelope ``{"command", "status",
"result"}`` or plain text. Hard failures exit with status 1 and report the
error class; failed verifications exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import acceptance
from .cluster import cluster_state, f_polynomial, fz, g_vector, c_vector, sign_sequence
from .config import Config, threads_from_env
from .document import Document, parse_input
from .errors import ParseError, QPDTError
from .potential import QP, mutate_qp
from .quiver import Quiver, mutate_quiver
from .representations import (
    count_hilb_points,
    count_grass_points,
    euler_from_counts,
    grass_degree_bound,
    grass_series,
    hilb_degree_bound,
    hilb_series,
)
from .torus import dt_automorphism, format_series
from .verify import verify_cc, verify_factorization, verify_transformation

__all__ = ["main", "build_parser", "run"]

COMMANDS = ("mutate", "seed", "fpoly", "gvec", "cvec", "signs", "hilb", "grass", "dtseries",
            "verify", "suite")


def _int_list(text: str) -> list[int]:
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpdt", description="Quiver mutation, cluster and DT series tools.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?", help="for verify: cc, trans or factor; for suite: criterion numbers")
    p.add_argument("--input", metavar="PATH", help="JSON document (quiver, potential, modules, params)")
    p.add_argument("--k", type=_int_list, help="mutation sequence, e.g. 1,2,1")
    p.add_argument("--i", type=int, help="vertex")
    p.add_argument("--v", type=_int_list, help="dimension vector")
    p.add_argument("--module", help="module name from the document catalog")
    p.add_argument("--trunc", type=int, help="truncation order N")
    p.add_argument("--primes", type=_int_list, help="field sizes, strictly increasing")
    p.add_argument("--max-dim", type=int, dest="max_dim", help="total dimension cap")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    return p


def _default_document() -> Document:
    return Document(QP.from_quiver(Quiver([[0, 1], [0, 0]])))


def _param(args, doc: Document, key: str, default=None):
    val = getattr(args, key, None)
    if val is not None:
        return val
    return doc.params.get(key, default)


def _require(value, name: str):
    if value is None:
        raise ParseError(f"missing parameter {name!r}")
    return value


def _cluster_record(q: Quiver, kseq: Sequence[int], i: int) -> dict:
    return {
        "kseq": list(kseq),
        "i": i,
        "fz": str(fz(q, kseq, i)),
        "F": str(f_polynomial(q, kseq, i)),
        "g": list(g_vector(q, kseq, i).coords),
        "c": list(c_vector(q, kseq, i).coords),
        "eps": ["+" if e > 0 else "-" for e in sign_sequence(q, kseq)],
    }


def _count_record(counts: dict[int, int], dim, degree: int) -> dict:
    return {"dim": list(dim), "counts": {str(q): c for q, c in sorted(counts.items())},
            "euler": euler_from_counts(counts, degree)}


def run(args: argparse.Namespace, doc: Document, cfg: Config) -> tuple[str, Any, str]:
    """Execute one command; returns ``(status, result, text)``."""
    q = doc.quiver
    qp = doc.qp
    kseq = list(_param(args, doc, "k", []))
    i = _param(args, doc, "i")
    cmd = args.command

    if cmd == "mutate":
        if qp.potential.is_zero():
            out = q
            for k in kseq:
                out = mutate_quiver(out, k)
            res = out.to_json()
            return "pass", res, json.dumps(res["arrows"])
        out_qp = qp
        for k in kseq:
            out_qp = mutate_qp(out_qp, k, cfg.max_reduction)
        res = out_qp.to_json()
        return "pass", res, repr(out_qp)

    if cmd == "seed":
        vars_ = [str(fz(q, kseq, j, cfg.max_depth)) for j in q.vertices()]
        st = cluster_state(q, kseq, cfg.max_depth)
        res = {"kseq": kseq, "quiver": st.quiver.to_json(), "vars": vars_}
        return "pass", res, "\n".join(vars_)

    if cmd in ("fpoly", "gvec", "cvec"):
        i = _require(i, "i")
        res = _cluster_record(q, kseq, i)
        key = {"fpoly": "F", "gvec": "g", "cvec": "c"}[cmd]
        return "pass", res, str(res[key])

    if cmd == "signs":
        eps = ["+" if e > 0 else "-" for e in sign_sequence(q, kseq)]
        return "pass", {"kseq": kseq, "eps": eps}, " ".join(eps)

    if cmd == "hilb":
        i = _require(i, "i")
        v = _param(args, doc, "v")
        if v is not None:
            counts = {p: count_hilb_points(qp, i, v, p, cfg.max_dim) for p in cfg.primes}
            res = _count_record(counts, v, hilb_degree_bound(qp, i, v))
            return "pass", res, str(res["euler"])
        s = hilb_series(qp, i, cfg.N, cfg.primes, cfg.max_dim)
        return "pass", {"i": i, "N": cfg.N, "series": s.to_json()}, format_series(s)

    if cmd == "grass":
        name = _require(_param(args, doc, "module"), "module")
        if name not in doc.modules:
            raise ParseError(f"module {name!r} not in the document catalog")
        r = doc.modules[name]
        v = _param(args, doc, "v")
        if v is not None:
            counts = {p: count_grass_points(r, v, p, cfg.max_dim) for p in cfg.primes}
            res = _count_record(counts, v, grass_degree_bound(r.dim, v))
            return "pass", res, str(res["euler"])
        s = grass_series(r, cfg.N, cfg.primes, cfg.max_dim)
        return "pass", {"module": name, "N": cfg.N, "series": s.to_json()}, format_series(s)

    if cmd == "dtseries":
        zs = [hilb_series(qp, j, cfg.N, cfg.primes, cfg.max_dim) for j in q.vertices()]
        dt = dt_automorphism(zs, q)
        res = {"N": cfg.N, "Z": {str(j): z.to_json() for j, z in zip(q.vertices(), zs)},
               "automorphism": dt.to_json()}
        text = "\n".join(f"Z{j} = {format_series(z)}" for j, z in zip(q.vertices(), zs))
        return "pass", res, text

    if cmd == "verify":
        which = args.target
        if which == "cc":
            i = _require(i, "i")
            name = _require(_param(args, doc, "module"), "module")
            if name not in doc.modules:
                raise ParseError(f"module {name!r} not in the document catalog")
            rep = verify_cc(qp, kseq, i, doc.modules[name], cfg.primes, cfg.max_dim)
        elif which == "trans":
            rep = verify_transformation(qp, kseq, cfg.N, cfg.primes, cfg.max_dim)
        elif which == "factor":
            rep = verify_factorization(qp, kseq, cfg.N)
        else:
            raise ParseError(f"verify needs one of cc, trans, factor (got {which!r})")
        return rep.status, rep.to_json(), rep.to_text()

    if cmd == "suite":
        numbers = _int_list(args.target) if args.target else sorted(acceptance.CRITERIA)
        for n in numbers:
            if n not in acceptance.CRITERIA:
                raise ParseError(f"unknown criterion {n}")
        threads = threads_from_env()
        if threads > 1 and len(numbers) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(acceptance.run_criterion, numbers, [cfg] * len(numbers)))
        else:
            results = [acceptance.run_criterion(n, cfg) for n in numbers]
        status = "pass" if all(r.passed for r in results) else "fail"
        return status, [r.to_json() for r in results], "\n".join(r.line() for r in results)

    raise ParseError(f"unknown command {cmd!r}")


def _emit(fmt: str, command: str, status: str, result: Any, text: str, out) -> None:
    if fmt == "json":
        env = {"command": command, "status": status, "result": result}
        out.write(json.dumps(env, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    command = args.command + (f" {args.target}" if args.target else "")
    try:
        if args.input:
            try:
                with open(args.input, "rb") as fh:
                    doc = parse_input(fh.read())
            except OSError as exc:
                raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        else:
            doc = _default_document()
        cfg = Config().updated(
            N=_param(args, doc, "trunc"),
            primes=tuple(p) if (p := _param(args, doc, "primes")) else None,
            max_dim=_param(args, doc, "max_dim"),
        )
        status, result, text = run(args, doc, cfg)
    except QPDTError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        _emit(args.fmt, command, "error", err, f"error: {type(exc).__name__}: {exc}", out)
        return 1
    _emit(args.fmt, command, status, result, text, out)
    return 0 if status == "pass" else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
