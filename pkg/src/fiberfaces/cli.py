"""Command-line front end.

Exit codes: 0 ran and reported (Unknown verdicts included), 1 input or
format error, 2 internal assertion failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import __version__

FORMATS = ("pres v1", "tri v1", "poly", "mat", "ball v1", "surface v1", "search v1", "cert v1",
           "whitehead v1", "tower tsv")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    seed: int = 0
    budget: int = 1000
    workers: int = 1
    out: str | None = None


class InputError(Exception):
    pass


# ---------------------------------------------------------------------- inputs

_BUILTIN_TRI = {"whitehead": "whitehead.tri", "figure8": "figure8.tri", "s3": "s3.tri",
                "t3": "t3.tri"}


def load_triangulation(name: str):
    """A path, a builtin fixture name, or ``W<n>`` for the Whitehead cover."""
    from .triangulation.core import load_validate

    p = Path(name)
    if p.exists():
        return load_validate(p.read_text())
    m = re.fullmatch(r"[Ww](\d+)", name)
    if m:
        from .fibering.whitehead import whitehead_cover

        n = int(m.group(1))
        if n < 1:
            raise InputError("W<n> needs n >= 1")
        return whitehead_cover(n)
    if name in _BUILTIN_TRI:
        text = resources.files("fiberfaces.data").joinpath(_BUILTIN_TRI[name]).read_text()
        return load_validate(text)
    raise InputError(f"no such triangulation file or fixture: {name}")


def load_presentation(name: str):
    from .fpgroup.presentation import parse_presentation
    from .pipelines import base_presentation

    if name == "B":
        return base_presentation()
    p = Path(name)
    if not p.exists():
        raise InputError(f"no such presentation file: {name}")
    return parse_presentation(p.read_text())


def parse_class(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise InputError(f"bad class {text!r}; expected comma-separated integers") from None


def parse_classes(text: str) -> list[tuple]:
    return [parse_class(c) for c in text.split(";") if c.strip()]


# ---------------------------------------------------------------------- commands

def cmd_alex(args, cfg: RunConfig) -> str:
    from .alexander.norm import format_ball_report
    from .exactalg.laurent import format_poly
    from .fpgroup.cosets import parse_coset_table, reidemeister_schreier
    from .pipelines import alexander_report

    P = load_presentation(args.pres)
    if args.perms:
        P = reidemeister_schreier(P, parse_coset_table(P, Path(args.perms).read_text()))
    try:
        rep = alexander_report(P, simplify=not args.no_simplify, seed=cfg.seed)
    except ValueError as exc:
        if "rank" in str(exc):
            return f"# {exc}\npoly zero-ideal\n"
        raise
    out = [format_poly(rep.data.polynomial).rstrip("\n"), format_ball_report(rep.ball).rstrip("\n")]
    out.append(f"pairs {' '.join(f'{a},{b}' for a, b in rep.pairs)}")
    out.append(f"failing {' '.join(map(str, rep.failing)) or '-'}")
    out.append(f"passing {' '.join(map(str, rep.passing)) or '-'}")
    if rep.failing_axis is not None:
        f = rep.ball.faces[rep.failing[0]]
        out.append("failing barycenter " + " ".join(map(str, f.barycenter)))
        out.append(f"failing barycenter on cube axis {rep.failing_axis}")
    if len(rep.data.polynomial.vars) == 1:
        out.append("# b1 = 1: norm reported uncorrected (max deg - min deg)")
    return "\n".join(out) + "\n"


def cmd_covers(args, cfg: RunConfig) -> str:
    from .fpgroup.cosets import (enumerate_cyclic_covers, enumerate_regular_covers,
                                 format_coset_table, parse_coset_table, reidemeister_schreier)
    from .fpgroup.presentation import abelianization, format_presentation
    from .fpgroup.simplify import simplify_presentation
    from .pipelines import cover_chain

    P = load_presentation(args.pres)
    out = [f"base homology {_h(abelianization(P))}"]
    if args.chain:
        r = cover_chain(P)
        out.append(f"regular (Z/2)^2 covers {len(r.regular)}")
        out.append(f"C homology {_h(abelianization(r.cover_C))}")
        out.append(f"Z/4 covers of C {len(r.cyclic)}")
        for _, h in r.cyclic:
            out.append(f"  cover homology {_h(h)}")
        out.append(f"selected {len(r.selected)} with homology Z + Z/28 + Z/28")
        if r.table_M is not None:
            out.append(f"intersection index {r.table_M.degree}")
            out.append(f"M homology {_h(r.homology_M)}")
        return "\n".join(out) + "\n"
    if args.perms:
        T = parse_coset_table(P, Path(args.perms).read_text())
        tables = [(T, None)]
    elif args.cyclic:
        tables = enumerate_cyclic_covers(P, args.cyclic)
    elif args.regular:
        tables = enumerate_regular_covers(P, [int(x) for x in args.regular.split(",")])
    else:
        raise InputError("covers needs --perms, --cyclic, --regular or --chain")
    out.append(f"covers {len(tables)}")
    for k, (T, _) in enumerate(tables):
        S = reidemeister_schreier(P, T)
        if not args.raw:
            S = simplify_presentation(S, seed=cfg.seed).presentation
        out.append(f"# cover {k} index {T.degree} homology {_h(abelianization(S))}")
        out.append(format_coset_table(P, T).rstrip("\n"))
        out.append(format_presentation(S).rstrip("\n"))
    return "\n".join(out) + "\n"


def _h(h) -> str:
    rank, tors = h
    parts = [f"Z^{rank}" if rank != 1 else "Z"] if rank else []
    parts += [f"Z/{t}" for t in tors]
    return " + ".join(parts) or "0"


def _working(T):
    from .triangulation.cocycles import cocycle_space

    return cocycle_space(T)


def cmd_norm_ball(args, cfg: RunConfig) -> str:
    from .alexander.fox import alexander_polynomial
    from .alexander.norm import alexander_ball, format_ball_report, norm_sandwich
    from .dualsurface.search import format_search_report, randomized_norm_search
    from .fibering.whitehead import vertex_classes
    from .triangulation.cocycles import class_cocycle

    T = load_triangulation(args.tri)
    b1 = T.homology()[0]
    if b1 == 0:
        raise InputError("b1 = 0: no classes")
    ball = None
    try:
        delta = alexander_polynomial(T.fundamental_group()).polynomial
        ball = alexander_ball(delta)
    except ValueError:
        pass
    if args.classes in (None, "vertices"):
        if ball is None or not ball.faces:
            raise InputError("Alexander ball is degenerate; give --classes explicitly")
        classes = vertex_classes(ball)
    else:
        classes = parse_classes(args.classes)
    for c in classes:
        if len(c) != b1:
            raise InputError(f"class {c} has {len(c)} coordinates, b1 = {b1}")
    space = _working(T)
    omegas = [class_cocycle(space, T, a) for a in classes]
    bounds = randomized_norm_search(space.triangulation, omegas, cfg.budget, seed=cfg.seed,
                                    workers=cfg.workers)
    labels = [",".join(map(str, a)) for a in classes]
    out = []
    if ball is not None:
        out.append(format_ball_report(ball).rstrip("\n"))
    out.append(format_search_report(bounds, labels).rstrip("\n"))
    if ball is not None and not ball.lineality:
        v = norm_sandwich(ball, {a: nb.bound for a, nb in zip(classes, bounds)})
        for a in classes:
            s = v["classes"][tuple(a)]
            out.append(f"sandwich {','.join(map(str, a))} alexander {s.alexander} upper {s.upper} "
                       f"{s.status}" + (f" ({s.reason})" if s.reason else ""))
        for f, ok in sorted(v["faces"].items()):
            out.append(f"face {f} certified {ok}")
    return "\n".join(out) + "\n"


def cmd_fiber(args, cfg: RunConfig) -> str:
    from .dualsurface.surface import build_dual_surface, format_surface_report
    from .fibering.certify import certify_fiber, format_certificate
    from .triangulation.cocycles import class_cocycle

    T = load_triangulation(args.tri)
    a = parse_class(args.cls)
    b1 = T.homology()[0]
    if len(a) != b1:
        raise InputError(f"class {a} has {len(a)} coordinates, b1 = {b1}")
    if not any(a):
        raise InputError("class must be nonzero")
    space = _working(T)
    om = class_cocycle(space, T, a)
    cert = certify_fiber(space.triangulation, om, budget=args.cert_budget, seed=cfg.seed,
                         search_budget=cfg.budget, workers=cfg.workers)
    S = build_dual_surface(space.triangulation, cert.omega)
    label = ",".join(map(str, a))
    return format_surface_report(S, label) + format_certificate(cert, label)


def cmd_tower(args, cfg: RunConfig) -> str:
    from .arith import format_tower_report, special_primes, tower_report

    if args.n < 1:
        raise InputError("--n must be >= 1")
    if args.limit is not None:
        ps = special_primes(args.limit)
        if len(ps) < args.n:
            raise InputError(f"only {len(ps)} special primes below {args.limit}")
    return format_tower_report(tower_report(args.n))


def cmd_primes(args, cfg: RunConfig) -> str:
    from .arith import primes_up_to, special_primes

    if args.limit < 2:
        raise InputError("--limit must be >= 2")
    ps = special_primes(args.limit)
    n_all = len(primes_up_to(args.limit))
    lines = [str(p) for p in ps]
    lines.append(f"# count {len(ps)} of {n_all} primes, density {len(ps) / n_all:.6f}")
    return "\n".join(lines) + "\n"


def cmd_whitehead(args, cfg: RunConfig) -> str:
    from .arith import whitehead_faces
    from .fibering.whitehead import format_whitehead_report, whitehead_report

    if args.n < 1:
        raise InputError("--n must be >= 1")
    r = whitehead_report(args.n, budget=cfg.budget, seed=cfg.seed, workers=cfg.workers)
    expected = whitehead_faces(args.n)
    nf = len(r.ball.faces)
    shape = {4: "square", 8: "octahedron"}.get(nf, f"cross polytope ({nf} facets)")
    text = format_whitehead_report(r)
    text += f"ball {shape}\n"
    text += f"expected faces {expected} fibered {len(r.faces.faces)} " \
            f"all certified {r.all_certified and len(r.faces.faces) == expected}\n"
    return text


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    def flags(suppress):
        # subcommands must not overwrite values given before the command name
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--seed", type=int, default=d(0))
        c.add_argument("--budget", type=int, default=d(None))
        c.add_argument("--workers", type=int, default=d(1))
        c.add_argument("--out", default=d(None))
        return c

    common = flags(True)
    ap = argparse.ArgumentParser(prog="fiberfaces", parents=[flags(False)],
                                 description="Alexander balls, Thurston-norm bounds and "
                                             "fibering certificates")
    ap.add_argument("--version", action="store_true", help="print version and formats")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("alex", parents=[common], help="Alexander polynomial and ball")
    p.add_argument("--pres", required=True, help="presentation file, or B")
    p.add_argument("--perms", help="coset table (perm lines) selecting a subgroup")
    p.add_argument("--no-simplify", action="store_true")

    p = sub.add_parser("covers", parents=[common], help="covers and their homology")
    p.add_argument("--pres", required=True)
    p.add_argument("--perms")
    p.add_argument("--cyclic", type=int)
    p.add_argument("--regular", help="abelian quotient, e.g. 2,2")
    p.add_argument("--chain", action="store_true", help="run the B -> C -> M chain")
    p.add_argument("--raw", action="store_true", help="do not simplify presentations")

    p = sub.add_parser("norm-ball", parents=[common], help="norm search on a triangulation")
    p.add_argument("--tri", required=True)
    p.add_argument("--classes", help="'a,b;c,d' or 'vertices' (default)")

    p = sub.add_parser("fiber", parents=[common], help="fibering certificate for a class")
    p.add_argument("--tri", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--cert-budget", type=int, default=10)

    p = sub.add_parser("tower", parents=[common], help="arithmetic tower report (TSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("primes", parents=[common], help="the special prime set")
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("whitehead", parents=[common], help="Whitehead tower W_n report")
    p.add_argument("--n", type=int, required=True)
    return ap


COMMANDS = {"alex": cmd_alex, "covers": cmd_covers, "norm-ball": cmd_norm_ball,
            "fiber": cmd_fiber, "tower": cmd_tower, "primes": cmd_primes,
            "whitehead": cmd_whitehead}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.version:
        print(f"fiberfaces {__version__}")
        print("formats " + ", ".join(FORMATS))
        return 0
    if not args.command:
        parser.print_help(sys.stderr)
        return 1
    default_budget = 0 if args.command == "fiber" else 1000
    cfg = RunConfig(args.command, tuple(v for k, v in sorted(vars(args).items())
                                        if k in ("pres", "tri", "perms")),
                    args.seed, default_budget if args.budget is None else args.budget,
                    args.workers, args.out)
    if cfg.budget < 0 or cfg.workers < 1:
        print("error: --budget must be >= 0 and --workers >= 1", file=sys.stderr)
        return 1
    from .exactalg.laurent import VariableMismatch
    from .fpgroup.cosets import CosetTableError
    from .fpgroup.presentation import PresentationError
    from .triangulation.core import TriangulationError

    try:
        text = COMMANDS[args.command](args, cfg)
    except (InputError, PresentationError, CosetTableError, TriangulationError,
            VariableMismatch, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
