"""Command-line driver.

Exit codes: 0 success, 1 a verification (or equality) failed, 2 usage,
parse or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cohomology, resolution
from .derivations import derivation_from_components
from .leavitt import LeavittAlgebra, NormalizationError
from .linalg import field_from_spec
from .quiver import QuiverError
from .tensors import TensorError
from .textio import (ParseError, load_quiver, parse_expr, print_canonical, print_quiver,
                     print_value, print_word)


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def __call__(self, key: str, value) -> None:
        value = str(value)
        if self.fmt == "machine":
            self.lines.append(f"{key}\t{value}")
        else:
            self.lines.append(f"{key}: {value}")

    def text(self, line: str) -> None:
        """A line shown only in text format."""
        if self.fmt == "text":
            self.lines.append(line)

    def flush(self, stream) -> None:
        if self.lines:
            stream.write("\n".join(self.lines) + "\n")


def _yesno(b: bool) -> str:
    return "yes" if b else "no"


def _setup(args):
    q = load_quiver(args.file)
    field = field_from_spec(args.field)
    return q, LeavittAlgebra(q, field)


def cmd_check(args, out: Output) -> int:
    q = load_quiver(args.file)
    out("vertices", " ".join(q.vertices))
    out("arrows", len(q.arrows))
    out("regular", " ".join(q.regular_vertices) or "-")
    out("sinks", " ".join(q.sinks) or "-")
    for v in q.regular_vertices:
        out(f"special.{v}", q.special[v])
    out("acyclic", _yesno(q.is_acyclic()))
    out.text("")
    for line in print_quiver(q).splitlines():
        out.text(line)
    return 0


def cmd_normalize(args, out: Output) -> int:
    _, alg = _setup(args)
    x = parse_expr(args.expr, alg.free)
    out("normal_form", print_canonical(alg.normal_form(x)))
    return 0


def cmd_equal(args, out: Output) -> int:
    _, alg = _setup(args)
    a = parse_expr(args.a, alg.free)
    b = parse_expr(args.b, alg.free)
    same = alg.equal(a, b)
    out("equal", "true" if same else "false")
    return 0 if same else 1


def cmd_basis(args, out: Output) -> int:
    _, alg = _setup(args)
    basis = alg.basis_up_to(args.max_len)
    out("max_len", args.max_len)
    out("count", len(basis))
    for i, w in enumerate(basis, 1):
        out(f"basis.{i}", print_word(w))
    return 0


def cmd_verify(args, out: Output) -> int:
    _, alg = _setup(args)
    reports = resolution.verify_identities(alg, seed=args.seed, samples=args.samples)
    out("quiver", Path(args.file).stem)
    out("field", alg.field.name)
    out("seed", args.seed)
    out("samples", args.samples)
    ok = True
    for r in reports:
        out(f"check.{r.name}", "ok" if r.holds else "FAIL")
        out(f"check.{r.name}.cases", r.checked)
        if not r.holds:
            ok = False
            out(f"check.{r.name}.witness", resolution._fmt(r.witness)
                if not hasattr(r.witness, "name") else r.witness.name)
            out(f"check.{r.name}.detail", r.detail)
    out("status", "ok" if ok else "FAIL")
    return 0 if ok else 1


def cmd_exactness(args, out: Output) -> int:
    _, alg = _setup(args)
    out("quiver", Path(args.file).stem)
    out("field", alg.field.name)
    if args.full:
        rep = resolution.verify_exactness_finite(alg)
        out("mode", "full")
        out("dims", "/".join(str(d) for d in rep.dims))
        out("dim.P", rep.dims[0])
        out("dim.LL", rep.dims[1])
        out("dim.L", rep.dims[2])
        out("rank.partial", rep.ranks["left"])
        out("rank.m", rep.ranks["right"])
        out("kernel.m", rep.dims[1] - rep.ranks["right"])
        out("partial_injective", _yesno(rep.injective))
        out("m_surjective", _yesno(rep.surjective))
        out("ker_m_equals_im_partial", _yesno(rep.middle_exact))
        out("euler", rep.euler)
        out("status", "exact" if rep.exact else "NOT EXACT")
        return 0 if rep.exact else 1
    rep = resolution.verify_exactness_truncated(alg, args.max_len, args.slack)
    out("mode", "truncated")
    out("max_len", rep.max_len)
    out("slack", rep.slack)
    out("dim.LL", rep.ll_dim)
    out("dim.P", rep.p_dim)
    out("kernel.m", rep.kernel_dim)
    out("solved", rep.solved)
    out("unsolved", rep.unsolved)
    out("status", "all kernel vectors hit" if rep.unsolved == 0 else "inconclusive")
    return 0


def cmd_center(args, out: Output) -> int:
    _, alg = _setup(args)
    bound = "full" if args.full else args.max_len
    rep = cohomology.center(alg, bound)
    out("bound", bound)
    out("dim", rep.dimension)
    for i, z in enumerate(rep.basis, 1):
        out(f"basis.{i}", print_canonical(z))
    return 0


def cmd_hh1(args, out: Output) -> int:
    _, alg = _setup(args)
    rep = cohomology.hh1(alg)
    out("source_dim", rep.source_dim)
    out("target_dim", rep.target_dim)
    out("rank", rep.rank)
    out("dim.HH0", rep.kernel_dim)
    out("dim.HH1", rep.dimension)
    for i, comp in enumerate(rep.outer_basis, 1):
        (v, x), = comp.items()
        out(f"outer.{i}", f"{v}={print_canonical(x)}")
    return 0


def cmd_derivation(args, out: Output) -> int:
    q, alg = _setup(args)
    comps = {}
    for spec in args.component or []:
        if "=" not in spec:
            raise ParseError(f"component must look like vertex=expr, got {spec!r}", 1, 1, "--component")
        v, expr = spec.split("=", 1)
        v = v.strip()
        if v not in q.vertices:
            raise ParseError(f"unknown vertex {v!r}", 1, 1, "--component")
        comps[v] = alg.normal_form(parse_expr(expr, alg.free))
    d = derivation_from_components(alg, comps)
    for l in q.letters():
        out(f"d({l})", print_value(d.on_letter(l)))
    if args.eval is not None:
        x = parse_expr(args.eval, alg.free)
        out("eval", print_value(d(x)))
    if q.is_acyclic():
        w = cohomology.outer_derivation_witness(alg, comps)
        out("inner", _yesno(w.inner))
        if w.inner:
            out("implementing", print_canonical(w.implementing))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS,
                        help="q (default) or gf:<p>")
    common.add_argument("--format", default=argparse.SUPPRESS, choices=("text", "machine"))

    parser = argparse.ArgumentParser(
        prog="lpalg", parents=[common],
        description="Leavitt path algebras: normal forms, the derivation D and its resolution.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("file", help="quiver file")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a quiver file")
    p = add("normalize", cmd_normalize, "normal form of an expression")
    p.add_argument("-e", "--expr", required=True)
    p = add("equal", cmd_equal, "decide equality in L")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p = add("basis", cmd_basis, "normal monomials up to a length")
    p.add_argument("--max-len", type=int, required=True)
    p = add("verify", cmd_verify, "check the resolution identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p = add("exactness", cmd_exactness, "exactness of the resolution")
    p.add_argument("--full", action="store_true", help="full bases (acyclic quivers)")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--slack", type=int, default=2)
    p = add("center", cmd_center, "the center (HH^0)")
    p.add_argument("--full", action="store_true")
    p.add_argument("--max-len", type=int, default=4)
    p = add("hh1", cmd_hh1, "HH^1 (acyclic quivers)")
    p = add("derivation", cmd_derivation, "derivation from components e_v M e_v")
    p.add_argument("--component", action="append", metavar="VERTEX=EXPR")
    p.add_argument("--eval", metavar="EXPR")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.field = getattr(args, "field", "q")
    args.format = getattr(args, "format", "text")
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except (ParseError, QuiverError, TensorError, NormalizationError, ValueError,
            OSError) as e:
        out.flush(sys.stdout)
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"lpalg: error: {msg}", file=sys.stderr)
        return 2
    out.flush(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
