"""Command-line front end.

Every verb builds one :class:`Report`, prints it as JSON (or writes it with
``--report`` and prints a one-line-per-check summary), and exits with

    0  every executed check passed
    1  some check failed
    2  the input was rejected
    3  some check is unknown and ``--strict`` was given
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .affine import McSul, McSulError, bounded_pair_search, is_f
from .annulus import PermutationError, dual_path_typeA, verify_typeB, verify_typeD
from .cartan_types import load_datum
from .chain_system import ChainSystemError, build_poset, is_garside
from .finite_nc import OrbitTooLarge, coxeter_system, nc_lattice, verify_word_criteria
from .poset import PosetError
from .report import Report
from .roots import AFFINE, FINITE, CartanError, RootDatum, classify
from .tube_oracle import oracle_report
from .tubes import C_rpe, compare_with_type_B, tube_poset, tube_system, vanishing_report, verify_omega_iso

THREADS_ENV = "NCCHAINS_THREADS"
SUITES = ("finite-nc", "mcsul", "rpe", "tubes", "annulus", "garside")
EXTENDED_FAMILIES = ("E",)
INPUT_ERRORS = (CartanError, PermutationError, ChainSystemError, PosetError, OSError, ValueError)


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    type: str | None = None
    suites: tuple = ()
    q: tuple | None = None
    bfs_limit: int = 200_000
    word_bound: int = 200_000
    depth: int = 8
    rank_cap: int = 6
    rank: int | None = None
    annulus: tuple = ()
    report: str | None = None
    plot: str | None = None
    strict: bool = False
    timings: bool = False
    extended: bool = False
    threads: int = 1

    def validate(self) -> "RunConfig":
        for name in ("bfs_limit", "word_bound", "rank_cap", "threads"):
            if getattr(self, name) < 1:
                raise InputError(f"{name.replace('_', '-')} must be positive")
        if self.depth < 0:
            raise InputError("depth must be non-negative")
        if self.q is not None and (any(x <= 0 for x in self.q) or sum(self.q) != 1):
            raise InputError("q entries must be positive rationals summing to 1")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise InputError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)}")
        return self


def parse_q(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.replace(",", " ").split())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read q vector {text!r}") from None


def parse_suites(text: str) -> tuple:
    return tuple(s.strip() for s in text.replace(",", "+").split("+") if s.strip())


def parse_annulus(text: str) -> tuple:
    """``a:8:1,3,5,7 b:5 d:6`` -> (("a", 8, (1, 3, 5, 7)), ("b", 5, ()), ("d", 6, ()))."""
    out = []
    for item in text.split():
        parts = item.split(":")
        try:
            kind, n = parts[0].lower(), int(parts[1])
            outer = tuple(int(x) for x in parts[2].split(",")) if len(parts) > 2 else ()
        except (IndexError, ValueError):
            raise InputError(f"cannot read annulus instance {item!r}") from None
        if kind not in ("a", "b", "d") or (kind == "a" and not outer):
            raise InputError(f"annulus instance {item!r} needs a:N:outer, b:N or d:N")
        out.append((kind, n, outer))
    return tuple(out)


_CONVERTERS: dict[str, Callable] = {
    "suites": parse_suites,
    "q": parse_q,
    "annulus": parse_annulus,
}


def _to_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise InputError(f"expected a boolean, got {text!r}")


def read_config(path: str | Path) -> dict:
    """``key = value`` lines; keys are flag names with or without dashes."""
    names = {f.name: f for f in fields(RunConfig)}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        key = "suites" if key == "suite" else key
        if not sep or key not in names:
            raise InputError(f"{path}:{lineno}: cannot read {raw.strip()!r}")
        value = value.strip()
        if key in _CONVERTERS:
            out[key] = _CONVERTERS[key](value)
        elif names[key].type in ("bool", bool):
            out[key] = _to_bool(value)
        elif names[key].type in ("int", "int | None", int):
            try:
                out[key] = int(value)
            except ValueError:
                raise InputError(f"{path}:{lineno}: {key} needs an integer") from None
        else:
            out[key] = value
    return out


# -- suites --------------------------------------------------------------------


def _load(cfg: RunConfig) -> RootDatum:
    if cfg.type is None:
        raise InputError("no type given (use --type, a positional type or a config file)")
    datum = load_datum(cfg.type)
    family = datum.name[:1]
    if datum.is_affine and family in EXTENDED_FAMILIES and not cfg.extended:
        raise InputError(f"{datum.name} sweeps are gated behind --extended")
    return datum


class Context:
    """Lazily shared objects for the suites of one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._datum = None
        self._mcsul = None
        self._ccf = None

    @property
    def datum(self) -> RootDatum:
        if self._datum is None:
            self._datum = _load(self.cfg)
        return self._datum

    @property
    def mcsul(self) -> McSul:
        if self._mcsul is None:
            self._mcsul = McSul(self.datum, self.cfg.q, limit=self.cfg.bfs_limit)
        return self._mcsul

    @property
    def ccf(self):
        if self._ccf is None:
            self._ccf = self.mcsul.build_CcF(self.cfg.word_bound)
        return self._ccf


def suite_finite_nc(ctx: Context) -> Report:
    datum = ctx.datum
    rep = verify_word_criteria(datum, ctx.cfg.rank_cap)
    lattice = nc_lattice(datum, ctx.cfg.rank_cap)
    rep.metadata["lattice_elements"] = len(lattice)
    rep.metadata["maximal_chains"] = lattice.count_maximal_chains()
    ok, witness = lattice.is_lattice()
    rep.add("NC poset is a lattice", ok, witness)
    return rep


def _absolute_order_search(ctx: Context) -> Report:
    """Reflection pairs of the relation, looked up among reduced T-words near the defining word."""
    mc = ctx.mcsul
    pairs = sorted((a[1], b[1]) for a, b in mc.mcsul_relation() if not is_f(a) and not is_f(b))
    found = bounded_pair_search(ctx.datum, pairs, depth=ctx.cfg.depth, limit=ctx.cfg.bfs_limit)
    missing = sorted(p for p, v in found.items() if v is None)
    rep = Report("bounded absolute-order search", {"pairs": len(pairs), "depth": ctx.cfg.depth})
    rep.add(f"every reflection pair occurs in a reduced T-word within {ctx.cfg.depth} Hurwitz moves",
            True if not missing else None, missing[:3])
    return rep


def suite_mcsul(ctx: Context) -> Report:
    mc = ctx.mcsul
    rep = Report(f"mcsul {ctx.datum.name}", mc.metadata())
    rep.merge(mc.verify_structure(ctx.ccf), "structure: ")
    rep.merge(mc.verify_good_bij(), "good bijection: ")
    rep.merge(_absolute_order_search(ctx), "search: ")
    return rep


def suite_rpe(ctx: Context) -> Report:
    crpe = C_rpe(tube_system(ctx.mcsul.hd), ctx.cfg.word_bound, ctx.cfg.threads)
    return verify_omega_iso(ctx.mcsul, ctx.ccf, crpe)


def _tube_ranks(ctx: Context) -> list[int]:
    if ctx.cfg.rank is not None:
        return [ctx.cfg.rank]
    return sorted(set(ctx.mcsul.hd.ranks))


def suite_tubes(ctx: Context) -> Report:
    ranks = _tube_ranks(ctx)
    rep = Report("tubes", {"ranks": ranks})
    for r in ranks:
        if r > ctx.cfg.rank_cap:
            raise InputError(f"tube rank {r} exceeds the rank cap {ctx.cfg.rank_cap}")
        rep.merge(compare_with_type_B(r))
        rep.merge(oracle_report(r))
        rep.merge(vanishing_report(r))
    return rep


def _annulus_instances(ctx: Context) -> tuple:
    if ctx.cfg.annulus:
        return ctx.cfg.annulus
    datum = ctx.datum
    if datum.is_affine and datum.name.startswith("A~") and ":outer=" in datum.name:
        outer = tuple(int(x) for x in datum.name.split(":outer=")[1].split(","))
        return (("a", datum.n, outer),)
    raise InputError("the annulus suite needs an A~ type or explicit instances (a:N:outer, b:N, d:N)")


def suite_annulus(ctx: Context) -> Report:
    rep = Report("annulus", {})
    for kind, n, outer in _annulus_instances(ctx):
        if kind == "a":
            rep.merge(dual_path_typeA(n, outer, ctx.cfg.bfs_limit))
        elif kind == "b":
            rep.merge(verify_typeB(n))
        else:
            rep.merge(verify_typeD(n))
    return rep


def suite_garside(ctx: Context) -> Report:
    datum = ctx.datum
    if datum.is_affine:
        return ctx.mcsul.garside_report(ctx.ccf)
    system = coxeter_system(datum, ctx.cfg.rank_cap)
    rep = Report(f"garside NC {datum.name}", {"words": len(system)})
    rep.extend(is_garside(system).checks)
    return rep


SUITE_FUNCTIONS = {
    "finite-nc": suite_finite_nc,
    "mcsul": suite_mcsul,
    "rpe": suite_rpe,
    "tubes": suite_tubes,
    "annulus": suite_annulus,
    "garside": suite_garside,
}


def run(cfg: RunConfig) -> tuple[Report, int]:
    """Execute the selected suites; input errors propagate to the caller."""
    cfg.validate()
    ctx = Context(cfg)
    if cfg.type is not None:
        ctx.datum  # reject bad types before any work starts
    title = " + ".join(cfg.suites) or "empty run"
    report = Report(title, {"type": cfg.type, "suites": list(cfg.suites)})
    if cfg.type is not None and ctx.datum.is_affine and {"mcsul", "rpe", "garside"} & set(cfg.suites):
        ctx.ccf  # shared by several suites, so build it once before the pool starts

    def timed(name):
        start = time.perf_counter()
        try:
            rep = SUITE_FUNCTIONS[name](ctx)
        except (McSulError, OrbitTooLarge) as exc:
            rep = Report(name)
            rep.add("construction", False, f"{exc} {getattr(exc, 'witness', '')}".strip())
        return rep, time.perf_counter() - start

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        results = list(pool.map(timed, cfg.suites))
    for name, (rep, seconds) in zip(cfg.suites, results):
        report.merge(rep, f"{name}: ")
        report.metadata[name] = rep.metadata
        report.timings[name] = round(seconds, 3)
    return report, report.exit_code(cfg.strict)


# -- verbs that are not suites ---------------------------------------------------


def classify_report(cfg: RunConfig) -> Report:
    # classification is cheap for every type, so --extended is not required here
    datum = _load(replace(cfg, extended=True))
    kind = classify(datum.cartan)
    rep = Report(f"classify {datum.name}", {"type": datum.name, "n": datum.n, "class": kind,
                                            "cox_word": [i + 1 for i in datum.cox_word]})
    rep.add("Cartan matrix is of finite or affine type", kind in (FINITE, AFFINE), kind)
    if kind == AFFINE:
        from .affine import compute_xi

        hd = compute_xi(datum)
        rep.metadata.update(delta=datum.delta, m=hd.m, cycle_lengths=hd.ranks,
                            xi_size=len(hd.xi), th_size=len(hd.th_roots))
        rep.add("|Ξ| = n - 2 + m", len(hd.xi) == datum.n - 2 + hd.m, len(hd.xi))
    return rep


EXPORT_OBJECTS = ("nc", "ccf", "crpe", "tube", "interval")


def export_object(cfg: RunConfig, obj: str, fmt: str, component: int = 0):
    """The poset or chain system named by ``obj`` as a string (json, dot) or a figure (png)."""
    if obj == "tube":
        if cfg.rank is None:
            raise InputError("export tube needs --rank")
        target = tube_poset(cfg.rank, cfg.rank_cap)
    else:
        ctx = Context(cfg)
        if obj == "nc":
            target = nc_lattice(ctx.datum, cfg.rank_cap)
        elif obj == "interval":
            if not 0 <= component < ctx.mcsul.m:
                raise InputError(f"component must be in 0..{ctx.mcsul.m - 1}")
            target = ctx.mcsul.factorable_interval(component)
        elif obj == "ccf":
            target = ctx.ccf
        else:
            target = C_rpe(tube_system(ctx.mcsul.hd), cfg.word_bound, cfg.threads)
    if fmt == "json":
        return target.dumps()
    poset = target if hasattr(target, "covers") else build_poset(target)
    if fmt == "dot":
        return poset.to_dot()
    return poset


# -- argument handling ---------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="key = value file; command-line flags win")
    g.add_argument("--report", help="write the JSON report here and print a summary instead")
    g.add_argument("--plot", help="render a PNG summary of the checks to this path")
    g.add_argument("--timings", action="store_true", default=None, help="include suite timings in the JSON")
    g.add_argument("--strict", action="store_true", default=None, help="exit 3 when any check is unknown")
    g.add_argument("--extended", action="store_true", default=None, help="allow the E~ sweeps")
    g.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    g.add_argument("--q", type=parse_q, help="translation shares, e.g. 1/3,2/3")
    g.add_argument("--bfs-limit", type=int, help="largest interval search")
    g.add_argument("--word-bound", type=int, help="largest chain system to enumerate")
    g.add_argument("--depth", type=int, help="Hurwitz moves for the bounded absolute-order search")
    g.add_argument("--rank-cap", type=int, help="largest finite rank or tube rank to enumerate")


def _type_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("type", nargs="?", help="type name such as A3, D~4, A~3:outer=1,3, or a Cartan file")
    p.add_argument("--type", dest="type_flag", help="same as the positional type")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncchains", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, help_text in (
        ("classify", "finite/affine classification, δ and horizontal data"),
        ("nc", "Hurwitz orbit, word criteria and the noncrossing lattice of a finite type"),
        ("mcsul-verify", "factored translations, interval structure and the good bijection"),
        ("rpe", "tube letters against the factorable chain system"),
        ("garside-check", "Garside conditions on NC(W) or on the factorable poset"),
    ):
        p = sub.add_parser(verb, help=help_text)
        _type_args(p)
        _common(p)

    p = sub.add_parser("tubes", help="single-tube posets against type B, and the Hom/Ext oracle")
    _type_args(p)
    p.add_argument("--rank", type=int, help="one abstract tube of this rank")
    _common(p)

    p = sub.add_parser("annulus", help="annulus-model checks")
    p.add_argument("action", choices=("verify-a", "verify-b", "verify-d"))
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--n", type=int, dest="n_flag", help="same as the positional N")
    p.add_argument("--outer", help="outer boundary points for verify-a, e.g. 1,3")
    _common(p)

    p = sub.add_parser("export", help="write a poset or chain system as JSON, DOT or a PNG Hasse diagram")
    p.add_argument("object", choices=EXPORT_OBJECTS)
    _type_args(p)
    p.add_argument("--rank", type=int, help="tube rank for 'export tube'")
    p.add_argument("--component", type=int, default=0, help="component for 'export interval'")
    p.add_argument("--format", choices=("json", "dot", "png"), default="json")
    p.add_argument("-o", "--output", help="output file (default stdout; required for png)")
    _common(p)

    p = sub.add_parser("run", help="run several suites from flags or a config file")
    p.add_argument("--type")
    p.add_argument("--suite", type=parse_suites, help="e.g. mcsul+rpe")
    p.add_argument("--rank", type=int)
    p.add_argument("--annulus", type=parse_annulus, help="instances such as 'a:8:1,3,5,7 b:5 d:6'")
    _common(p)
    return parser


_VERB_SUITES = {
    "nc": ("finite-nc",),
    "mcsul-verify": ("mcsul",),
    "rpe": ("rpe",),
    "garside-check": ("garside",),
    "tubes": ("tubes",),
    "annulus": ("annulus",),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    from_file = read_config(args.config) if getattr(args, "config", None) else {}
    cfg = replace(RunConfig(), **from_file)
    env = os.environ.get(THREADS_ENV)
    if env and args.threads is None and "threads" not in from_file:
        try:
            cfg.threads = int(env)
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be an integer") from None
    overrides = {}
    for name in ("q", "bfs_limit", "word_bound", "depth", "rank_cap", "report", "plot",
                 "strict", "timings", "extended", "threads", "rank", "annulus", "type"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "suite", None):
        overrides["suites"] = args.suite
    if args.verb in _VERB_SUITES:
        overrides["suites"] = _VERB_SUITES[args.verb]
    if getattr(args, "type_flag", None):
        if getattr(args, "type", None) and args.type != args.type_flag:
            raise InputError("conflicting positional type and --type")
        overrides["type"] = args.type_flag
    if args.verb == "annulus":
        n = args.n if args.n is not None else args.n_flag
        if n is None:
            raise InputError("annulus needs N (positional or --n)")
        try:
            outer = tuple(int(x) for x in args.outer.split(",")) if args.outer else ()
        except ValueError:
            raise InputError(f"cannot read --outer {args.outer!r}") from None
        kind = args.action[-1]
        if kind == "a" and not outer:
            raise InputError("verify-a needs --outer")
        overrides["annulus"] = ((kind, n, outer),)
    return replace(cfg, **overrides).validate()


def _emit(report: Report, cfg: RunConfig, out) -> None:
    if cfg.report:
        Path(cfg.report).write_text(report.dumps(cfg.timings))
        for line in report.summary_lines():
            print(line, file=out)
    else:
        out.write(report.dumps(cfg.timings))
    if cfg.plot:
        from .plotting import check_summary

        check_summary(report, cfg.plot)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.verb == "classify":
            report = classify_report(cfg)
            _emit(report, cfg, out)
            return report.exit_code(cfg.strict)
        if args.verb == "export":
            result = export_object(cfg, args.object, args.format, args.component)
            if args.format == "png":
                if not args.output:
                    raise InputError("png export needs -o")
                from .plotting import hasse_diagram

                hasse_diagram(result, args.output, title=f"{args.object} {cfg.type or cfg.rank}")
            elif args.output:
                Path(args.output).write_text(result)
            else:
                out.write(result)
            return 0
        if args.verb == "run" and not cfg.suites:
            raise InputError("run needs --suite or a config file listing suites")
        report, code = run(cfg)
        _emit(report, cfg, out)
        return code
    except INPUT_ERRORS as exc:
        print(f"ncchains: error: {exc}", file=sys.stderr)
        return 2
    except McSulError as exc:
        print(f"ncchains: construction failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
