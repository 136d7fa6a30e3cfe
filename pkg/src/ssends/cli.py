"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.
Errors go to stderr as ``E:<code>: message``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .endspace import (
    INFINITE, SurfaceSpec, cb_analysis, classify_surface, end_classes, is_self_similar,
    is_uniformly_self_similar, parse_descriptor, print_descriptor,
)
from .endspace.descriptor import (
    CantorAtom, CantorSeq, Descriptor, FiniteUnion, Marking, OmegaSeq, Point, walk,
)
from .homeo.tables import loads_table, random_cell_permutation
from .ordinal import print_ordinal
from .structure.factor import FactorizationCertificate, factor_into_involutions, verify_certificate
from .structure.standard_form import standard_form

OK, DOMAIN, USAGE, VERIFY = 0, 1, 2, 3
COLORS = {Marking.PLANAR: "lightblue", Marking.GENUS: "salmon"}


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class VerifyFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _descriptor(text: str) -> Descriptor:
    try:
        return parse_descriptor(text)
    except ValueError as exc:
        raise DomainError("descriptor", str(exc)) from None


def _genus(text: str):
    if text in ("inf", "infinity", "∞"):
        return INFINITE
    try:
        g = int(text)
    except ValueError:
        raise UsageError(f"--genus expects a natural number or inf, got {text!r}") from None
    if g < 0:
        raise UsageError("--genus must be non-negative")
    return g


# -- text renderers --------------------------------------------------------------


def _classify_text(rep) -> List[str]:
    d = rep.to_dict()
    cb = d["cb"]
    lines = [f"genus: {d['genus']}", f"ends: {d['ends']}",
             f"perfect kernel: {cb['perfect_kernel'] or 'empty'}"]
    if cb["scattered_rank"] is not None:
        lines.append(f"cb rank: {cb['scattered_rank']}, multiplicity: {cb['top_multiplicity']}")
    if d["countable_type"]:
        lines.append(f"countable type: {d['countable_type']}")
    lines.append("classes:")
    for c in d["classes"]:
        tag = " maximal" if c["maximal"] else ""
        lines.append(f"  [{c['id']}] at {c['locus']}: {c['marking']}, {c['cardinality']}{tag}")
    order = ", ".join(f"{a} < {b}" for a, b in d["order"]) or "none"
    lines.append(f"order: {order}")
    flags = [k for k, v in d["flags"].items() if v]
    lines.append(f"flags: {' '.join(flags) or 'none'}")
    lines.extend(f"verdict: {v}" for v in d["verdicts"])
    return lines


def _rank_dict(d: Descriptor) -> dict:
    cb = cb_analysis(d)
    return {
        "perfect_kernel": print_descriptor(cb.perfect_kernel) if cb.perfect_kernel else None,
        "rank": print_ordinal(cb.scattered_rank) if cb.countable else None,
        "multiplicity": cb.top_multiplicity,
    }


def order_dot(d: Descriptor) -> str:
    poset = end_classes(d)
    out = ["digraph classes {", "  rankdir=BT;", "  node [style=filled];"]
    for c in poset.classes:
        shape = "doublecircle" if c.is_maximal else "circle"
        label = f"{c.id}\\n{c.locus_text}\\n{c.cardinality}"
        out.append(f'  c{c.id} [label="{label}", shape={shape}, fillcolor={COLORS[c.marking]}];')
    for a, b in sorted(poset.strict_order):
        out.append(f"  c{a} -> c{b};")
    out.append("}")
    return "\n".join(out)


def _node_label(node: Descriptor) -> str:
    if isinstance(node, Point):
        return "pt"
    if isinstance(node, CantorAtom):
        return "cantor"
    if isinstance(node, OmegaSeq):
        return "omega"
    if isinstance(node, CantorSeq):
        return "cseq"
    return "union"


def _node_marking(node: Descriptor) -> Optional[Marking]:
    if isinstance(node, (Point, CantorAtom)):
        return node.m
    if isinstance(node, OmegaSeq):
        return node.limit_m
    if isinstance(node, CantorSeq):
        return node.base_m
    return None


def tree_dot(d: Descriptor) -> str:
    out = ["digraph descriptor {", "  node [style=filled];"]
    ids = {}
    for path, node in walk(d):
        name = "n" + "_".join(("r",) + path)
        ids[path] = name
        m = _node_marking(node)
        color = COLORS[m] if m is not None else "white"
        out.append(f'  {name} [label="{_node_label(node)}", fillcolor={color}];')
        if path:
            out.append(f'  {ids[path[:-1]]} -> {name} [label="{path[-1]}"];')
    out.append("}")
    return "\n".join(out)


# -- commands -------------------------------------------------------------------


def cmd_classify(a, out):
    d = _descriptor(a.descriptor)
    try:
        rep = classify_surface(SurfaceSpec(a.genus, d))
    except ValueError as exc:
        raise DomainError("precondition", str(exc)) from None
    if a.format == "json":
        out.append(json.dumps(rep.to_dict(), indent=2, ensure_ascii=False))
    else:
        out.extend(_classify_text(rep))
    return OK


def cmd_rank(a, out):
    r = _rank_dict(_descriptor(a.descriptor))
    if a.format == "json":
        out.append(json.dumps(r, indent=2))
    else:
        out.append(f"perfect kernel: {r['perfect_kernel'] or 'empty'}")
        out.append(f"rank: {r['rank'] or 'undefined'}")
        if r["multiplicity"] is not None:
            out.append(f"multiplicity: {r['multiplicity']}")
    return OK


def cmd_order(a, out):
    d = _descriptor(a.descriptor)
    if a.format == "dot":
        out.append(order_dot(d))
        return OK
    poset = end_classes(d)
    if a.format == "json":
        out.append(json.dumps({
            "classes": [{"id": c.id, "locus": c.locus_text, "marking": c.marking.value,
                         "cardinality": str(c.cardinality), "maximal": c.is_maximal}
                        for c in poset.classes],
            "order": sorted([list(p) for p in poset.strict_order]),
        }, indent=2))
        return OK
    for c in poset.classes:
        tag = " maximal" if c.is_maximal else ""
        out.append(f"[{c.id}] at {c.locus_text}: {c.marking.value}, {c.cardinality}{tag}")
    for x, y in sorted(poset.strict_order):
        out.append(f"{x} < {y}")
    return OK


def cmd_selfsim(a, out):
    d = _descriptor(a.descriptor)
    if is_uniformly_self_similar(d):
        out.append("uniformly-self-similar")
    elif is_self_similar(d):
        out.append("self-similar")
    else:
        out.append("none")
    return OK


def _sf(d: Descriptor):
    try:
        return standard_form(d)
    except ValueError as exc:
        raise DomainError("precondition", str(exc)) from None


def cmd_standard_form(a, out):
    sf = _sf(_descriptor(a.descriptor))
    s = sf.summary(-a.window, a.window)
    if a.format == "json":
        out.append(json.dumps(s, indent=2))
        return OK
    out.append(f"descriptor: {s['descriptor']}")
    out.append(f"y: {s['y']}")
    out.append(f"z: {s['z']}")
    for i, cells in s["chain"].items():
        out.append(f"U[{i}]: {' '.join(c or '<root>' for c in cells)}")
    return OK


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError("io", f"{path}: {exc.strerror}") from None


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise DomainError("io", f"{path}: {exc.strerror}") from None


def cmd_factor(a, out):
    if (a.homeo is None) == (not a.random):
        raise UsageError("factor needs exactly one of --homeo FILE or --random")
    sf = _sf(_descriptor(a.descriptor))
    try:
        if a.random:
            g = random_cell_permutation(sf.model, a.seed, a.table_depth)
        else:
            g = loads_table(_read(a.homeo), sf.model)
    except (ValueError, KeyError) as exc:
        raise DomainError("homeo", str(exc)) from None
    cert = factor_into_involutions(g, sf, a.depth)
    text = cert.dumps()
    if a.out:
        _write(a.out, text)
    else:
        out.append(text.rstrip("\n"))
    c, t, i = cert.counts
    summary = f"verdict: {cert.verdict}; commutators {c}, translations {t}, involutions {i}; depth {cert.verified_depth}"
    if a.out:
        out.append(summary)
    else:
        print(summary, file=a.err)
    if cert.verdict != "pass":
        raise VerifyFailed(f"first disagreement at {cert.first_disagreement}")
    return OK


def cmd_verify(a, out):
    try:
        cert = FactorizationCertificate.loads(_read(a.certificate))
        checked = verify_certificate(cert, a.depth)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise DomainError("certificate", str(exc)) from None
    c, t, i = checked.counts
    out.append(f"verdict: {checked.verdict}; commutators {c}, translations {t}, "
               f"involutions {i}; depth {checked.verified_depth}")
    if checked.verdict != "pass":
        where = checked.first_disagreement
        raise VerifyFailed(f"word differs from target at cell {where}" if where
                           else "counts exceed the bounds (3, 6, 12)")
    return OK


def cmd_emit_dot(a, out):
    out.append(tree_dot(_descriptor(a.descriptor)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ssends", description="Ends spaces of infinite-type surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classification report")
    c.add_argument("--genus", required=True, type=str)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_classify)

    c = sub.add_parser("rank", help="Cantor-Bendixson analysis")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_rank)

    c = sub.add_parser("order", help="end classes and their order")
    c.add_argument("--format", choices=("text", "json", "dot"), default="text")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_order)

    c = sub.add_parser("selfsim", help="none, self-similar or uniformly-self-similar")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_selfsim)

    c = sub.add_parser("standard-form", help="chain decomposition summary")
    c.add_argument("--window", type=int, default=3)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_standard_form)

    c = sub.add_parser("factor", help="factor a homeomorphism into involutions")
    c.add_argument("descriptor")
    c.add_argument("--homeo", help="cell-permutation table (perm-v1 JSON)")
    c.add_argument("--random", action="store_true", help="use a seeded random table")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--table-depth", type=int, default=3)
    c.add_argument("--depth", type=int, default=8)
    c.add_argument("--out", help="certificate path (stdout if omitted)")
    c.set_defaults(run=cmd_factor)

    c = sub.add_parser("verify", help="re-verify a certificate")
    c.add_argument("certificate")
    c.add_argument("--depth", type=int, default=None)
    c.set_defaults(run=cmd_verify)

    c = sub.add_parser("emit-dot", help="descriptor tree as a DOT graph")
    c.add_argument("descriptor")
    c.set_defaults(run=cmd_emit_dot)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: List[str] = []
    try:
        args = build_parser().parse_args(argv)
        args.err = stderr
        if getattr(args, "genus", None) is not None:
            args.genus = _genus(args.genus)
        for name in ("depth", "table_depth", "window"):
            v = getattr(args, name, None)
            if v is not None and v < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
        code = args.run(args, out)
    except UsageError as exc:
        print(f"E:usage: {exc}", file=stderr)
        return USAGE
    except DomainError as exc:
        _flush(out, stdout)
        print(f"E:{exc.code}: {exc}", file=stderr)
        return DOMAIN
    except VerifyFailed as exc:
        _flush(out, stdout)
        print(f"E:verify: {exc}", file=stderr)
        return VERIFY
    _flush(out, stdout)
    return code


def _flush(lines: List[str], stream):
    if lines:
        stream.write("\n".join(lines) + "\n")


def main() -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    sys.exit(run())


if __name__ == "__main__":
    main()
