"""Command-line interface.

Exit status: 0 when every check passes, 1 when any fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import series as S
from .appendix import appendix_series
from .dga import DifferentialSpec, GeneratorSpec
from .fixtures_io import list_fixtures, load_fixture
from .homology import HomologyTable, homology_table
from .linalg import Ring
from .series import MultiSeries
from .states import state_sum
from . import verify as V


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# series


FORMULAS = ("pn", "pnred", "ln", "z2", "fermion-n", "fermion-limit", "rr-left", "rr-right",
            "krr-a", "krr-b", "appendix", "state-sum")
_NEEDS_N = {"pn", "pnred", "ln", "z2", "fermion-n", "appendix", "state-sum"}


def build_series(formula: str, n: Optional[int], q_max: int, reduced: bool = False) -> MultiSeries:
    if formula not in FORMULAS:
        raise UsageError(f"unknown formula {formula!r}; choose from {', '.join(FORMULAS)}")
    if formula in _NEEDS_N and n is None:
        raise UsageError(f"formula {formula!r} needs --n")
    try:
        if formula == "pn":
            return S.bosonic_full(n, q_max)
        if formula == "pnred":
            return S.bosonic_reduced(n, q_max)
        if formula == "ln":
            return S.bosonic_lower(n, q_max)
        if formula == "z2":
            return S.z2_closed_form(n, q_max)
        if formula == "fermion-n":
            return S.fermionic_recursive(n, q_max)
        if formula == "fermion-limit":
            return S.fermionic_limit(q_max)
        if formula in ("rr-left", "rr-right"):
            return S.rr_side(formula[3:], q_max)
        if formula in ("krr-a", "krr-b"):
            return S.krr_side(formula[-1].upper(), q_max)
        if formula == "state-sum":
            return state_sum(n, q_max)
        return appendix_series(n, "reduced" if reduced else "unreduced", q_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _series_text(s: MultiSeries) -> str:
    lines = []
    for (a, q, t), c in s.sorted_terms():
        mono = f"q^{q}" + (f" t^{t}" if t else "") + (f" a^{a}" if a else "")
        lines.append(f"{c:>6}  {mono}")
    return "\n".join(lines) if lines else "0"


# ---------------------------------------------------------------------------
# homology


def _parse_ring(token: str) -> Ring:
    try:
        return Ring.parse(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_diff(token: str) -> DifferentialSpec:
    try:
        return DifferentialSpec.parse(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(n: int, reduced: bool) -> GeneratorSpec:
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    if reduced and n < 2:
        raise UsageError("the reduced complex needs n >= 2")
    return GeneratorSpec(n, reduced)


# ---------------------------------------------------------------------------
# sources for compare


def resolve_source(token: str, q_max: int) -> MultiSeries | HomologyTable:
    """Resolve ``kind:args`` into a table or a series.

    * ``homology:n=7,coeff=q[,reduced][,diff=generic:42]``
    * ``series:pn,n=4`` (any formula token; ``reduced`` selects the reduced appendix)
    * ``fixture:t79-rational``
    * ``file:path.json`` (a serialized series or table)
    """
    kind, _, rest = token.partition(":")
    if kind == "fixture":
        try:
            return load_fixture(rest).series
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if kind == "file":
        path = Path(rest)
        if not path.is_file():
            raise UsageError(f"no such file {rest!r}")
        data = json.loads(path.read_text())
        if isinstance(data, dict) and "entries" in data:
            return HomologyTable.from_dict(data)
        return MultiSeries.from_json(path.read_text())
    if kind in ("homology", "series"):
        opts: Dict[str, str] = {}
        head = None
        for part in filter(None, _split_args(rest)):
            key, eq, val = part.partition("=")
            if eq:
                opts[key] = val
            elif kind == "series" and head is None and key in FORMULAS:
                head = key
            else:
                opts[key] = "1"
        n = int(opts["n"]) if "n" in opts else None
        reduced = opts.get("reduced") in ("1", "true", "yes")
        if kind == "series":
            if head is None:
                raise UsageError(f"series source {token!r} names no formula")
            return build_series(head, n, q_max, reduced)
        ring = _parse_ring(opts.get("coeff", "q"))
        diff = _parse_diff(opts.get("diff", "standard"))
        return homology_table(_spec(n, reduced), diff, ring, q_max)
    raise UsageError(f"cannot resolve source {token!r}")


def _split_args(text: str) -> List[str]:
    return [p.strip() for p in text.split(",")]


# ---------------------------------------------------------------------------
# verify suites


def _suite_reports(suite: str, n: Optional[int], q_max: int, slow: bool) -> List[V.CheckReport]:
    ns = [n] if n is not None else list(range(2, 9))
    reps: List[V.CheckReport] = []
    if suite == "mu":
        for m in ns:
            reps += [V.mu_cycle_check(GeneratorSpec(m), s) for s in range(m - 1)]
    elif suite == "relations":
        for m in ns:
            spec = GeneratorSpec(m)
            for kind in V.RELATION_KINDS:
                reps += [V.verify_relation_boundary(kind, spec, j) for j in V.relation_range(kind, m)]
    elif suite == "lee":
        for m in ns:
            spec = GeneratorSpec(m)
            reps += [V.lee_identity_check(spec, s) for s in range(m - 1)]
            reps.append(V.anticommutation_check(spec, min(q_max, 24)))
    elif suite == "potential":
        reps += [V.potential_identity_check(m) for m in ([n] if n else range(1, 9))]
    elif suite.startswith("torsion"):
        _, _, p = suite.partition(":")
        primes = [int(p)] if p else ([5, 7, 11, 13] if slow else [5, 7])
        try:
            reps += [V.torsion_witness_check(pp) for pp in primes]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif suite == "identities":
        reps += V.identities_checks(100 if slow and q_max <= 60 else q_max)
    elif suite == "reduction":
        reps += [V.reduction_check(m, min(q_max, 24)) for m in ([n] if n else range(3, 8))]
    elif suite == "generic-contrast":
        reps.append(V.generic_contrast_check())
    elif suite == "chain":
        for m in ([n] if n else range(1, 7)):
            for diff in (DifferentialSpec.standard(), DifferentialSpec.generic(V.GENERIC_SEED)):
                reps.append(V.square_zero_check(GeneratorSpec(m), diff, min(q_max, 24)))
                reps.append(V.anticommutation_check(GeneratorSpec(m), min(q_max, 24), diff))
    elif suite == "all":
        for sub in ("chain", "mu", "relations", "lee", "potential", "torsion", "identities",
                    "reduction", "generic-contrast"):
            reps += _suite_reports(sub, n if sub not in ("potential", "reduction", "chain") else None,
                                   q_max, slow)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return reps


# ---------------------------------------------------------------------------
# entry point


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khalg", description="Koszul model for stable Khovanov homology of torus knots.")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", help="bigraded homology table")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--coeff", default="q", help="q, zp:<p> or int")
    h.add_argument("--qmax", type=int, required=True)
    h.add_argument("--reduced", action="store_true")
    h.add_argument("--diff", default="standard", help="standard, generic:<seed> or d1")
    h.add_argument("--out", choices=("json", "table"), default="json")

    s = sub.add_parser("series", help="expand a closed-form or recursive series")
    s.add_argument("--formula", required=True, help=", ".join(FORMULAS))
    s.add_argument("--n", type=int)
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--reduced", action="store_true", help="reduced appendix table")
    s.add_argument("--out", choices=("json", "table"), default="json")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True,
                   help="mu, relations, lee, potential, torsion[:p], identities, reduction, "
                        "generic-contrast, chain or all")
    v.add_argument("--n", type=int)
    v.add_argument("--qmax", type=int, default=60)
    v.add_argument("--slow", action="store_true", help="widen ranges (krr to q^100, more primes)")

    c = sub.add_parser("compare", help="compare two tables or series coefficientwise")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--qmax", type=int, required=True)
    c.add_argument("--tmax", type=int)

    sub.add_parser("fixtures", help="check bundled fixtures against their manifest")
    return ap


def _emit(reports: Sequence[V.CheckReport], out) -> int:
    for r in reports:
        print(r.to_json(), file=out)
    return 0 if all(r.passed for r in reports) else 1


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "homology":
            if args.qmax < 0:
                raise UsageError("--qmax must be non-negative")
            tab = homology_table(_spec(args.n, args.reduced), _parse_diff(args.diff),
                                 _parse_ring(args.coeff), args.qmax)
            print(tab.to_json() if args.out == "json" else tab.grid(), file=out)
            return 0
        if args.command == "series":
            s = build_series(args.formula, args.n, args.qmax, args.reduced)
            print(s.to_json(formula=args.formula, n=args.n) if args.out == "json" else _series_text(s),
                  file=out)
            return 0
        if args.command == "verify":
            return _emit(_suite_reports(args.suite, args.n, args.qmax, args.slow), out)
        if args.command == "compare":
            lhs = resolve_source(args.left, args.qmax)
            rhs = resolve_source(args.right, args.qmax)
            rep = V.compare_tables(lhs, rhs, args.qmax, args.tmax)
            rep.params.update({"left": args.left, "right": args.right})
            return _emit([rep], out)
        if args.command == "fixtures":
            reps = []
            for name in list_fixtures():
                fx = load_fixture(name)
                ok = fx.checksum_ok() and fx.total() == fx.total_dimension
                reps.append(V.CheckReport("fixture", {"name": name}, "pass" if ok else "fail",
                                          {"total": fx.total(), "expected": fx.total_dimension,
                                           "checksum_ok": fx.checksum_ok()}))
            return _emit(reps, out)
    except (UsageError, ValueError) as exc:
        print(f"khalg: error: {exc}", file=sys.stderr)
        return 2
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
