"""Command-line interface: ``lcdcodes <subcommand> [options]``.

Exit codes: 0 when nothing failed, 2 when a check failed, 3 on usage errors.
Every option can also come from a ``--config`` file of ``key value`` lines;
command-line flags win over the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import build as bld
from . import tables
from .code import from_generator, hull_by_intersection, report
from .construct import (
    ValidationError,
    paley_conference,
    paley_matrix,
    paley_type_I,
    skew_core,
    validate_design,
    validate_fq_weighing,
    validate_weighing,
)
from .decode import (
    BeyondRadius,
    DecoderError,
    context_from_matrices,
    decode,
    radius_sweep,
    sample_codewords,
)
from .enumeration import default_cap
from .gfq import FieldError
from .matq import Matrix, MatrixError, format_matrix, matmul, read_matrix, write_matrix
from .orbit import (
    OrbitError,
    OrbitStructure,
    cyclic_subgroups,
    double_count_holds,
    format_group,
    orbit_structure,
    paut_search,
    read_group,
    skew_orbit_check,
    verify_delta_identity,
    verify_orbit_inverse,
    verify_weighted_orthogonality,
)

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_USAGE = 3

VARIANTS = {
    "plain": bld.PLAIN,
    "skew": bld.SKEW,
    "skew-hadamard": bld.SKEW_HADAMARD,
    "orbit": bld.ORBIT,
    "orbit-skew": bld.ORBIT_SKEW,
    "hermitian": bld.HERMITIAN,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# paley / conference


def cmd_paley(args) -> int:
    if args.pi % 4 != 3:
        raise UsageError(f"--pi {args.pi}: Paley type I needs pi = 3 mod 4 (use 'conference' for 1 mod 4)")
    _emit(format_matrix(paley_type_I(args.pi).W), args.out)
    return EXIT_OK


def cmd_conference(args) -> int:
    if args.pi % 4 != 1:
        raise UsageError(f"--pi {args.pi}: conference matrices need pi = 1 mod 4")
    _emit(format_matrix(paley_conference(args.pi).W), args.out)
    return EXIT_OK


# validate


def _infer_design(B: Matrix, r: int | None, lam: int | None):
    g = matmul(B, B.T).data
    r = int(g[0, 0]) if r is None else r
    lam = (int(g[0, 1]) if B.rows > 1 else 0) if lam is None else lam
    return validate_design(B, r, lam)


def cmd_validate(args) -> int:
    M = read_matrix(args.matrix)
    if args.kind == "weighing":
        W = validate_weighing(M, args.m)
        flags = [
            name
            for name, on in (
                ("hadamard", W.is_hadamard),
                ("skew", W.is_skew),
                ("skew-type-hadamard", W.is_skew_type_hadamard),
                ("conference", W.is_conference),
            )
            if on
        ]
        print(" ".join([f"PASS W({W.n},{W.m})", *flags]))
    elif args.kind == "design":
        D = _infer_design(M, args.r, args.lam)
        print(f"PASS design points={D.points} blocks={D.blocks} r={D.r} lambda={D.lam}")
    else:
        W = validate_fq_weighing(M, args.m)
        print(f"PASS W({W.n},{W.m};F{W.field.q})")
    return EXIT_OK


# build


def _ingredient(args):
    if (args.w is None) == (args.pi is None):
        raise UsageError("give exactly one of --w FILE or --pi N")
    variant = VARIANTS[args.variant]
    if args.pi is not None:
        if variant == bld.HERMITIAN:
            raise UsageError("the Hermitian variant needs an F_q-weighing matrix file")
        W = paley_matrix(args.pi)
        if variant in (bld.SKEW, bld.ORBIT_SKEW):
            W = skew_core(paley_type_I(args.pi))
        return W
    M = read_matrix(args.w)
    if variant == bld.HERMITIAN:
        return validate_fq_weighing(M if M.field is not None else M.to_field(args.q))
    return validate_weighing(M)


def _design_arg(args, n: int):
    if args.b is None:
        return None
    if args.identity:
        raise UsageError("--b and --identity are mutually exclusive")
    B = read_matrix(args.b)
    if B.rows != n:
        raise ValidationError(f"design has {B.rows} rows, ingredient has order {n}")
    return _infer_design(B, args.r, args.lam)


def _builder(args, W):
    variant = VARIANTS[args.variant]
    if variant in (bld.ORBIT, bld.ORBIT_SKEW):
        if args.group is None:
            R = W.W
        else:
            _, gens = read_group(args.group)
            R = orbit_structure(W.W, gens)
        ingredient = R
        order = R.t if isinstance(R, OrbitStructure) else R.rows
    else:
        ingredient = W
        order = W.W.rows
    B = _design_arg(args, order)
    simple = {
        bld.PLAIN: lambda a: bld.build_plain(ingredient, B, args.q),
        bld.ORBIT: lambda a: bld.build_orbit(ingredient, B, args.q),
        bld.HERMITIAN: lambda a: bld.build_hermitian(ingredient, B, args.q),
        bld.SKEW: lambda a: bld.build_skew(ingredient, B, a, args.q),
        bld.SKEW_HADAMARD: lambda a: bld.build_skew_hadamard(ingredient, B, a, args.q),
        bld.ORBIT_SKEW: lambda a: bld.build_orbit_skew(ingredient, B, a, args.q),
    }
    return simple[variant], variant in (bld.SKEW, bld.SKEW_HADAMARD, bld.ORBIT_SKEW)


def cmd_build(args) -> int:
    W = _ingredient(args)
    make, takes_alpha = _builder(args, W)
    if takes_alpha:
        if args.alpha is None:
            raise UsageError(f"variant {args.variant} needs --alpha N or --alpha all")
        alphas = range(args.q) if args.alpha == "all" else [int(args.alpha)]
    else:
        if args.alpha is not None:
            raise UsageError(f"variant {args.variant} takes no --alpha")
        alphas = [None]
    results = [make(a) for a in alphas]
    print("\n".join(r.trace() for r in results), end="")
    if len(results) == 1:
        res = results[0]
        if args.out_g:
            write_matrix(res.G, args.out_g)
        if args.out_gbar:
            if res.G_bar is None:
                raise UsageError("no G_bar: it exists only with the identity design")
            write_matrix(res.G_bar, args.out_gbar)
    elif args.out_g or args.out_gbar:
        raise UsageError("--out-g/--out-gbar need a single alpha")
    return EXIT_OK


# report


def cmd_report(args) -> int:
    G = read_matrix(args.g)
    if G.field is None:
        raise UsageError("report needs a generator over GF(q) (header domain like F3)")
    C = from_generator(G)
    rep = report(
        C,
        distance=args.distance,
        wdist=args.wdist,
        hermitian=args.hermitian,
        cap=args.cap,
        max_weight=args.max_weight,
    )
    sys.stdout.write(rep.to_text())
    status = EXIT_OK
    if args.lcd:
        cross = hull_by_intersection(C, args.hermitian)
        print(f"hull_by_intersection {cross}")
        if cross != rep.hull or not rep.lcd:
            status = EXIT_FAIL
    if args.require_exact and rep.d is not None and not rep.d.exact:
        print(f"distance not certified: {rep.d.method}", file=sys.stderr)
        status = EXIT_FAIL
    return status


# orbit / paut


def cmd_orbit(args) -> int:
    W = validate_weighing(read_matrix(args.w))
    _, gens = read_group(args.group)
    S = orbit_structure(W.W, gens)
    checks = [
        ("double-counting", double_count_holds(S)),
        ("delta-identity", verify_delta_identity(W.W, S)),
        ("weighted-orthogonality", verify_weighted_orthogonality(W, S)),
        ("R-nonsingular-inverse", verify_orbit_inverse(W.W, S)),
    ]
    if S.equal_lengths:
        RR = matmul(S.R, S.R.T).data
        checks.append((f"RR^T={W.m}I", bool(np.array_equal(RR, W.m * np.eye(S.t, dtype=np.int64)))))
        if W.is_skew and S.aligned:
            checks.append(("R-skew", skew_orbit_check(W, S)))
    print(f"t={S.t} row_orbit_sizes={S.row_sizes} col_orbit_sizes={S.col_sizes} "
          f"equal_lengths={'yes' if S.equal_lengths else 'no'} aligned={'yes' if S.aligned else 'no'}")
    for name, ok in checks:
        print(f"{name} {'ok' if ok else 'VIOLATED'}")
    if args.out:
        write_matrix(S.R, args.out)
    else:
        sys.stdout.write(format_matrix(S.R))
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_FAIL


def cmd_paut(args) -> int:
    W = validate_weighing(read_matrix(args.w))
    auts = paut_search(W, max_n=args.max_n)
    print(f"|PAut| = {len(auts)}")
    for g in cyclic_subgroups(auts):
        S = orbit_structure(W.W, [g])
        order = 1
        x = g
        while not x.is_identity():
            x = g.compose(x)
            order += 1
        eq = "equal" if S.equal_lengths else "unequal"
        print(f"cyclic order {order}: row orbits {S.row_sizes} ({eq})")
    if args.out:
        Path(args.out).write_text(format_group(auts, W.n))
    return EXIT_OK


# decode


def _words(args, F, length: int) -> list[np.ndarray]:
    if args.word and args.words:
        raise UsageError("give --word or --words, not both")
    lines: list[str] = []
    if args.word:
        lines = [" ".join(args.word)]
    elif args.words:
        lines = [ln for ln in Path(args.words).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    out = []
    for ln in lines:
        w = np.array([int(x) for x in ln.split()], dtype=np.int64)
        if w.size != length:
            raise UsageError(f"word has {w.size} symbols, expected {length}")
        out.append(w)
    return out


def cmd_decode(args) -> int:
    G, G_bar = read_matrix(args.g), read_matrix(args.gbar)
    ctx = context_from_matrices(G, G_bar, args.d)
    words = _words(args, ctx.field, ctx.length)
    if not words and args.sweep is None:
        raise UsageError("nothing to decode: give --word, --words or --sweep")
    for w in words:
        try:
            print(" ".join(str(int(x)) for x in decode(ctx, w)))
        except BeyondRadius:
            print("FAIL beyond-radius")
    if args.sweep is not None:
        counts = radius_sweep(ctx, sample_codewords(ctx, args.sweep, args.seed))
        print(
            f"sweep t={ctx.t} codewords={args.sweep} seed={args.seed} patterns={counts.total} "
            f"corrected={counts.corrected} failed={counts.failed} wrong={counts.wrong}"
        )
        if counts.corrected != counts.total:
            return EXIT_FAIL
    return EXIT_OK


# reproduce


def cmd_reproduce(args) -> int:
    results = tables.reproduce(
        args.table,
        args.data_dir,
        cap=args.cap,
        max_weight=args.max_weight,
        max_order=args.max_n,
        workers=args.workers,
    )
    for r in results:
        print(r.to_text())
    counts = tables.summary(results)
    print(" ".join(f"{k} {v}" for k, v in counts.items()))
    if counts[tables.FAIL]:
        return EXIT_FAIL
    if args.strict and (counts[tables.SKIPPED] or counts[tables.PARTIAL]):
        return EXIT_FAIL
    return EXIT_OK


# parser and config


def _alpha(text: str) -> str:
    if text != "all" and not text.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="file of 'key value' lines supplying option defaults")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap in codewords (default: $LCDCODES_ENUM_CAP or 2^28)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled computations")
    common.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    parser = _Parser(prog="lcdcodes", description="LCD codes from weighing matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("paley", parents=[common], help="Paley type I Hadamard matrix (pi = 3 mod 4)")
    p.add_argument("--pi", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_paley)

    p = sub.add_parser("conference", parents=[common], help="Paley conference matrix (pi = 1 mod 4)")
    p.add_argument("--pi", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_conference)

    p = sub.add_parser("validate", parents=[common], help="validate a weighing matrix or design file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--kind", choices=["weighing", "design", "fq-weighing"], default="weighing")
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--lam", type=int)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", parents=[common], help="assemble G (and G_bar) with the LCD condition trace")
    p.add_argument("--variant", choices=sorted(VARIANTS), required=True)
    p.add_argument("--w", help="ingredient matrix file")
    p.add_argument("--pi", type=int, help="use the Paley matrix of order pi+1 (skew variants: its skew core)")
    p.add_argument("--group", help="automorphism group file (orbit variants)")
    p.add_argument("--b", help="design incidence file")
    p.add_argument("--r", type=int)
    p.add_argument("--lam", type=int)
    p.add_argument("--identity", action="store_true", help="B = I (the default without --b)")
    p.add_argument("--alpha", type=_alpha, help="field element, or 'all' to sweep")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out-g")
    p.add_argument("--out-gbar")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("report", parents=[common], help="parameters, hull and distance of a code")
    p.add_argument("--g", required=True, help="generator matrix file")
    p.add_argument("--distance", action="store_true", help="compute the minimum distance")
    p.add_argument("--wdist", action="store_true", help="print the weight distribution")
    p.add_argument("--lcd", action="store_true", help="cross-check the hull and fail unless LCD")
    p.add_argument("--hermitian", action="store_true")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--require-exact", action="store_true", help="fail unless d is certified EXACT")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("orbit", parents=[common], help="orbit matrix and its identities")
    p.add_argument("--w", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("paut", parents=[common], help="brute-force permutation automorphisms")
    p.add_argument("--w", required=True)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--out", help="write every automorphism as a group file")
    p.set_defaults(func=cmd_paut)

    p = sub.add_parser("decode", parents=[common], help="projection decoding")
    p.add_argument("--g", required=True)
    p.add_argument("--gbar", required=True)
    p.add_argument("--d", type=int, required=True, help="certified minimum distance")
    p.add_argument("--word", nargs="+", help="received word as symbols")
    p.add_argument("--words", help="file with one received word per line")
    p.add_argument("--sweep", type=int, help="radius sweep over this many sampled codewords")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("reproduce", parents=[common], help="reproduce a published table")
    p.add_argument("--table", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--data-dir")
    p.add_argument("--max-n", type=int, help="only rows whose matrix order is at most this")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--strict", action="store_true", help="SKIPPED or PARTIAL rows fail the run")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _truthy(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


def read_config(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        if not value.strip():
            raise UsageError(f"{path}:{n}: expected 'key value'")
        out[key.replace("-", "_")] = value.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    config = read_config(known.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in sub.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest not in config:
                continue
            raw = config[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = _truthy(raw)
            elif action.type is not None:
                defaults[action.dest] = action.type(raw)
            else:
                defaults[action.dest] = raw
            action.required = False
        sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (UsageError, OSError, ValueError) as exc:
        print(f"lcdcodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.cap is None:
        args.cap = default_cap()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lcdcodes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, bld.BuildError, OrbitError, DecoderError, MatrixError, FieldError) as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"lcdcodes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
