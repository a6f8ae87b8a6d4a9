"""Command line interface.

Exit status: 0 success, 1 usage error, 2 illegal spectrum, 3 not realizable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import fundamental as fc
from . import irregular, roots, weyl
from .tuples import IllegalPartitions, SpectralParseError, SpectralTuple, idx, parse_tuple

EXIT_USAGE = 1
EXIT_ILLEGAL = 2
EXIT_NOT_REALIZABLE = 3


class UsageError(Exception):
    pass


def _compact(x) -> str:
    return json.dumps(x, separators=(",", ":"))


def _vector(items) -> str:
    return "[ " + " ".join(str(x) for x in items) + " ]"


def format_analysis(a: weyl.Analysis) -> str:
    return (f"[{a.pts},{a.order},{a.index},{a.fuchs},{a.rod},{_vector(a.redsp)},"
            f"{_compact(a.fundamental.to_list())}]")


def _parts_arg(text: Optional[str]):
    if text is None:
        return None
    try:
        if ":" in text or "," in text:
            lo, hi = text.replace(":", ",").split(",")
            return (int(lo) if lo else 0, int(hi) if hi else None)
        return int(text)
    except ValueError:
        raise UsageError(f"bad --parts value {text!r}") from None


def _emit_tuples(tuples: Sequence[SpectralTuple], fmt: str) -> str:
    if fmt == "json":
        return _compact([m.to_list() for m in tuples])
    if fmt == "vector":
        return _vector(str(m) for m in tuples)
    return "\n".join(str(m) for m in tuples)


def _read_spectrum(text: str):
    """A tuple, or a root vector in bracket form converted to its tuple."""
    if roots.is_kac_text(text):
        return roots.root_to_tuple(roots.parse_kac(text))
    return parse_tuple(text)


# ------------------------------------------------------------ commands

def cmd_classify(args) -> str:
    if args.idx > 0 or args.idx % 2:
        raise UsageError("the index must be even and not positive")
    if args.ord < 0:
        raise UsageError("the order must be non-negative")
    res = fc.classify(args.idx, args.ord, _parts_arg(args.parts), workers=args.workers,
                      descending=args.descending)
    return _emit_tuples(res, args.format)


def cmd_check(args) -> str:
    m = _read_spectrum(args.spectrum)
    out = args.out
    if out == "sp":
        return _compact(m.to_list())
    if out == "kac":
        return roots.kac_form(m)
    if out == "sort":
        return _compact([sorted(leg, reverse=True) for leg in m.to_list()])
    if out == "strip":
        return _compact(m.strip().to_list())
    if out == "idx":
        return str(idx(m))
    if out == "basic":
        return _compact(weyl.fundamental_of(m).to_list())
    if out == "construct":
        chain = weyl.construct(m)
        if args.format == "json":
            return _compact([c.to_list() for c in chain])
        return "[\n" + ",\n".join(" " + _compact(c.to_list()) for c in chain) + "\n]"
    if out == "root":
        t = weyl.root_construction(m)
        base, given, refl = t.as_list()
        return f"[{_compact(base)},{_compact(given)},\n{_compact(refl)}]"
    a = weyl.analyze(m)
    if args.format == "json":
        return _compact(a.as_list())
    return format_analysis(a)


def cmd_orbit(args) -> str:
    seed = parse_tuple(args.seed) if args.seed else None
    res = weyl.orbit_generate(args.max_ord, eq=args.eq, parts=_parts_arg(args.parts), std=args.std,
                              seed=seed, basic=args.basic, workers=args.workers)
    if args.descending:
        res = res[::-1]
    return _emit_tuples(res, args.format)


def cmd_refine(args) -> str:
    res = irregular.refinements(parse_tuple(args.spectrum))
    if args.format == "json":
        return _compact([s.nested() for s in res])
    return "\n".join(s.format(args.style) for s in res)


def cmd_check_irregular(args) -> str:
    a = irregular.analyze_irregular(irregular.parse_irregular(args.spectrum))
    if args.show:
        return a.show()
    if args.format == "json":
        return _compact(a.as_list())
    return a.format_list()


def cmd_bench(args) -> str:
    if args.idx > 0 or args.idx % 2:
        raise UsageError("the index must be even and not positive")
    stages = args.ablate or ["none"]
    lines, rows = [], []
    for stage in stages:
        if stage not in fc.STAGES and stage != "none":
            raise UsageError(f"unknown stage {stage!r}; choose from {', '.join(fc.STAGES)}, none")
        r = fc.benchmark_ablation(args.idx, stage, workers=args.workers)
        rows.append({"idx": r.idx_target, "disabled": r.disabled or "none", "count": r.count,
                     "states": r.steps, "elapsed": round(r.elapsed, 4)})
        lines.append(f"idx {r.idx_target}  disabled {r.disabled or 'none':7s} count {r.count:6d}  "
                     f"states {r.steps:10d}  elapsed {r.elapsed:.3f} s")
    if args.format == "json":
        return _compact(rows)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kacstar", description="Roots of the star-shaped Kac-Moody root system.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=False):
        sp.add_argument("--format", choices=["plain", "json"], default="plain")
        if workers:
            sp.add_argument("--workers", type=int, default=None,
                            help=f"worker processes (default: ${fc.WORKERS_ENV} or 1)")

    c = sub.add_parser("classify", help="fundamental tuples with a given index of rigidity")
    c.add_argument("--idx", type=int, required=True)
    c.add_argument("--ord", type=int, default=0, help="order, 0 for all orders")
    c.add_argument("--parts", help="number of partitions: k or lo:hi")
    c.add_argument("--descending", action="store_true")
    common(c, workers=True)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check", help="analyse a spectral type")
    c.add_argument("spectrum", help="tuple text, nested list, or [n,[...],...] root vector")
    c.add_argument("--out", default="analysis",
                   choices=["analysis", "sp", "kac", "basic", "construct", "root", "idx", "sort", "strip"])
    common(c)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("orbit", help="rigid tuples or orbit members up to an order")
    c.add_argument("--max-ord", type=int, required=True,
                   help="maximal order; zero or negative lists fundamental tuples of that index")
    c.add_argument("--eq", action="store_true", help="only tuples of exactly this order")
    c.add_argument("--parts", help="number of partitions: k or lo:hi")
    c.add_argument("--std", type=int, choices=[1, -1], default=1,
                   help="1: partitions ascending inside a tuple, -1: descending")
    c.add_argument("--seed", help="generate the orbit of this tuple instead of rigid tuples")
    c.add_argument("--basic", action="store_true", help="start from the fundamental tuple of the seed")
    c.add_argument("--descending", action="store_true")
    c.add_argument("--format", choices=["plain", "json", "vector"], default="plain")
    c.add_argument("--workers", type=int, default=None)
    c.set_defaults(func=cmd_orbit)

    c = sub.add_parser("refine", help="confluences of a Fuchsian spectral type")
    c.add_argument("spectrum")
    c.add_argument("--style", choices=["pipe", "paren"], default="pipe")
    common(c)
    c.set_defaults(func=cmd_refine)

    c = sub.add_parser("check-irregular", help="analyse an irregular spectral type")
    c.add_argument("spectrum")
    c.add_argument("--show", action="store_true")
    common(c)
    c.set_defaults(func=cmd_check_irregular)

    c = sub.add_parser("bench", help="time the search with pruning stages disabled")
    c.add_argument("--idx", type=int, required=True)
    c.add_argument("--ablate", action="append", help=f"stage to disable: {', '.join(fc.STAGES)} or none")
    common(c, workers=True)
    c.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"kacstar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectralParseError as exc:
        print(f"kacstar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IllegalPartitions, roots.NotDominantShaped):
        print("illegal partitions\n-1")
        return EXIT_ILLEGAL
    except weyl.NotRealizable:
        print("not realizable\n0")
        return EXIT_NOT_REALIZABLE
    if out:
        try:
            print(out, flush=True)
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
