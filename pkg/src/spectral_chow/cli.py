"""Command-line interface: ``spectral-chow <command> ...``."""

from __future__ import annotations

import argparse
import enum
import sys
from pathlib import Path

from . import chow, io, spectra, symtensor
from .exprparse import ExpressionError, parse_unipoly
from .families import IdenticallyDegenerate, discriminant_n2, family_spectral_coords, ruled_example
from .fields import FieldError, QQ, field_from_descriptor
from .generate import random_cycle, random_instance
from .multisym import DegreeBound, NotInvariant, parse_invariant, rewrite_in_chow
from .rng import Stream
from .spectra import NotCommuting
from .unipoly import Unsplit
from .verify import run_verify


class Exit(enum.IntEnum):
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
    MALFORMED = 3
    NOT_COMMUTING = 4
    UNSPLIT = 5
    DEGENERATE = 6
    NOT_INVARIANT = 7
    DEGREE_BOUND = 8
    FIELD = 9


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _field_arg(text):
    try:
        return field_from_descriptor(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_spectral_datum(args) -> int:
    t = io.tuple_from_json(io.read_json(args.input), args.field)
    z = spectra.spectral_datum(t)
    doc = io.cycle_to_json(z, t.field)
    if args.out:
        Path(args.out).write_text(io.dumps(doc))
        print(f"spectral datum of a commuting {t.d}-tuple of {t.n}x{t.n} matrices "
              f"over {t.field!r}: {len(z.entries)} point(s)")
        for p, m in z.entries:
            print(f"  ({', '.join(t.field.format(x) for x in p)})  mult {m}")
    else:
        sys.stdout.write(io.dumps(doc))
    return Exit.OK


def cmd_chow_embed(args) -> int:
    doc = io.read_json(args.input)
    field = io.parse_field(doc, override=args.field)
    z = io.cycle_from_json(doc, field)
    a = chow.iota(z)
    if args.signed:
        a = a.signed()
    _emit(io.dumps(io.coords_to_json(a, field, signed=args.signed)), args.out)
    return Exit.OK


def cmd_newton_convert(args) -> int:
    doc = io.read_json(args.input)
    field = io.parse_field(doc, override=args.field)
    coords, signed_in = io.coords_from_json(doc, field)
    if isinstance(coords, symtensor.ChowCoords):
        if signed_in:
            coords = coords.signed()
        out = symtensor.newton_e_to_p(coords)
        text = io.dumps(io.coords_to_json(out, field))
    else:
        out = symtensor.newton_p_to_e(coords)
        if args.signed:
            out = out.signed()
        text = io.dumps(io.coords_to_json(out, field, signed=args.signed))
    _emit(text, args.out)
    return Exit.OK


def cmd_cayley_check(args) -> int:
    t = io.tuple_from_json(io.read_json(args.tuple), args.field)
    if args.cycle:
        z = io.cycle_from_json(io.read_json(args.cycle), t.field)
    else:
        z = spectra.spectral_datum(t)
    res = spectra.cayley_hamilton_check(t, z, trials=args.trials, seed=args.seed)
    if res.ok:
        print(f"PASS: product vanishes for {t.d} coordinate forms and {args.trials} random forms")
        return Exit.OK
    print(f"FAIL: product is nonzero for the linear form with coefficients {list(res.witness)}")
    return Exit.CHECK_FAILED


def cmd_cayley_fiber(args) -> int:
    doc = io.read_json(args.input)
    field = io.parse_field(doc, override=args.field)
    z = io.cycle_from_json(doc, field)
    fib = chow.cayley_fiber(z)
    rows = [("point", "mult", "local length", "jump")]
    for p, m, length in fib.entries:
        rows.append(("(" + ", ".join(field.format(x) for x in p) + ")", str(m), str(length),
                     "yes" if length > m else "no"))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.append(f"total length {fib.total_length} (n = {fib.n}); "
                 f"{'JUMP: fiber is not flat here' if fib.jumps else 'no jump'}")
    _emit("\n".join(lines) + "\n", args.out)
    return Exit.OK


def cmd_rewrite_invariant(args) -> int:
    field = args.field or QQ
    try:
        p = parse_invariant(args.expression, args.n, args.d, field)
    except ExpressionError as exc:
        raise io.MalformedInput(str(exc)) from None
    q = rewrite_in_chow(p, max_degree=args.max_degree)
    _emit(q.format() + "\n", args.out)
    return Exit.OK


def cmd_family_coords(args) -> int:
    t = io.family_from_json(io.read_json(args.input), args.field)
    fc = family_spectral_coords(t)
    lines = [f"family of commuting {t.d}-tuples of {t.n}x{t.n} matrices over {t.ring!r}"]
    for name, coords in (("a", fc.a), ("b", fc.b)):
        for i, tens in enumerate(coords.tensors, start=1):
            lines.append(f"{name}_{i} = {tens}")
    if t.n == 2 and t.d >= 1:
        lines.append(f"discriminant a_1^2 - 4 a_2 = {discriminant_n2(fc.a[1], fc.a[2])}")
    _emit("\n".join(lines) + "\n", args.out)
    return Exit.OK


def _quadratic_in_t(c1, c0) -> str:
    """Render t^2 + c1 t + c0 with coefficients in k[s], dropping zero terms."""
    out = "t^2"
    for c, mono in ((c1, "*t"), (c0, "")):
        if c.is_zero():
            continue
        text = str(c)
        simple = " " not in text.lstrip("-")
        if simple and text.startswith("-"):
            out += f" - {text[1:]}{mono}"
        elif simple:
            out += f" + {text}{mono}"
        else:
            out += f" + ({text}){mono}"
    return out


def cmd_ruled_example(args) -> int:
    field = args.field or QQ
    try:
        a1 = parse_unipoly(args.a1, field)
        a2 = parse_unipoly(args.a2, field)
    except ExpressionError as exc:
        raise io.MalformedInput(str(exc)) from None
    ex = ruled_example(a1, a2)
    try:
        samples = [field.parse(x) for x in args.samples.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise io.MalformedInput(f"--samples: {exc}") from None
    c1, c0 = ex.quotient_char_poly
    lines = [
        f"a1 = {a1}",
        f"a2 = {a2}",
        f"discriminant a1^2 - 4 a2 = {ex.discriminant}",
        "multiplicity-free generic fiber (A-heart): yes",
        f"presentation: generators 1, t1, t2; relation ({ex.discriminant})*t2 = 0",
        f"free rank: {ex.report.free_rank}",
        "invariant factors: " + (", ".join(str(f) for f in ex.report.invariant_factors) or "none"),
        f"torsion: {'k[s]/(' + ', '.join(str(f) for f in ex.report.invariant_factors) + ')' if ex.report.invariant_factors else '0'}",
        f"torsion-free quotient: k[s][t]/({_quadratic_in_t(c1, c0)})",
        "",
        "fiber length profile:",
        "  s      length",
    ]
    for c, length in ex.fiber_profile(samples):
        lines.append(f"  {field.format(c):<6} {length}")
    _emit("\n".join(lines) + "\n", args.out)
    return Exit.OK


def cmd_verify(args) -> int:
    rep = run_verify(seed=args.seed, trials=args.trials, max_n=args.max_n, max_d=args.max_d,
                     field=args.field or QQ, jobs=args.jobs)
    _emit(rep.to_text(), args.out)
    if args.json:
        Path(args.json).write_text(rep.to_json())
    return Exit.OK if rep.ok else Exit.CHECK_FAILED


def cmd_gen(args) -> int:
    field = args.field or QQ
    rng = Stream(args.seed, 7)
    if args.kind == "cycle":
        z = random_cycle(rng, args.n, args.d, field)
        doc = io.cycle_to_json(z, field)
    else:
        inst = random_instance(rng, args.n, args.d, field)
        doc = io.tuple_to_json(inst.tuple)
    _emit(io.dumps(doc), args.out)
    return Exit.OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None, help="Q or Fp:<p>")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")

    p = argparse.ArgumentParser(prog="spectral-chow",
                                description="Exact spectral data of commuting matrix tuples.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectral-datum", parents=[common], help="joint spectrum of a tuple file")
    s.add_argument("input")
    s.set_defaults(func=cmd_spectral_datum)

    s = sub.add_parser("chow-embed", parents=[common], help="Chow coordinates of a cycle file")
    s.add_argument("input")
    s.add_argument("--signed", action="store_true", help="report (-1)^i a_i")
    s.set_defaults(func=cmd_chow_embed)

    s = sub.add_parser("newton-convert", parents=[common], help="convert between a_i and b_i")
    s.add_argument("input")
    s.add_argument("--signed", action="store_true",
                   help="use the signed convention (-1)^i a_i for Chow output")
    s.set_defaults(func=cmd_newton_convert)

    s = sub.add_parser("cayley-check", parents=[common], help="generalized Cayley-Hamilton check")
    s.add_argument("tuple")
    s.add_argument("cycle", nargs="?", help="cycle file (default: the tuple's own datum)")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_cayley_check)

    s = sub.add_parser("cayley-fiber", parents=[common], help="fiber of the Cayley cover")
    s.add_argument("input")
    s.set_defaults(func=cmd_cayley_fiber)

    s = sub.add_parser("rewrite-invariant", parents=[common],
                       help="express an invariant in the Chow coordinates")
    s.add_argument("expression", help="polynomial in x[j][k], e.g. 'x[1][1]^2+x[2][1]^2'")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--max-degree", type=int, default=6)
    s.set_defaults(func=cmd_rewrite_invariant)

    s = sub.add_parser("family-coords", parents=[common], help="a_i(s), b_i(s) of a family file")
    s.add_argument("input")
    s.set_defaults(func=cmd_family_coords)

    s = sub.add_parser("ruled-example", parents=[common],
                       help="torsion and CM quotient of the rank-two ruled-surface family")
    s.add_argument("a1")
    s.add_argument("a2")
    s.add_argument("--samples", default="0,1,2,3", help="comma-separated s values")
    s.set_defaults(func=cmd_ruled_example)

    s = sub.add_parser("verify", parents=[common], help="seeded cross-check battery")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--max-d", type=int, default=3)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", default=None, help="also write a JSON report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", parents=[common], help="generate a random tuple or cycle file")
    s.add_argument("--kind", choices=("tuple", "cycle"), default="tuple")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except NotCommuting as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"witness: theta_{exc.i}, theta_{exc.j}", file=sys.stderr)
        return Exit.NOT_COMMUTING
    except Unsplit as exc:
        print(f"error: spectrum does not split over the field; stuck factor {exc.factor}",
              file=sys.stderr)
        return Exit.UNSPLIT
    except IdenticallyDegenerate as exc:
        print(f"error: {exc} (outside the multiplicity-free locus)", file=sys.stderr)
        return Exit.DEGENERATE
    except NotInvariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return Exit.NOT_INVARIANT
    except DegreeBound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return Exit.DEGREE_BOUND
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return Exit.FIELD
    except (io.MalformedInput, ExpressionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return Exit.MALFORMED


if __name__ == "__main__":
    sys.exit(main())
