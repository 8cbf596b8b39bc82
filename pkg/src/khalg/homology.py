"""Bigraded homology tables of the Koszul complex.

Convention: the differential lowers t, so the homology at ``(q, t)`` is
``ker(C(q,t) -> C(q,t-1)) / im(C(q,t+1) -> C(q,t))`` (for ``d1`` the target
also drops q by 2).  Over Z the kernel is a saturated sublattice, so the
torsion at ``(q, t)`` is read off the Smith normal form of the incoming map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .dga import Bidegree, DifferentialSpec, GeneratorSpec, differential_matrix, enumerate_basis, t_range
from .linalg import Ring, rank_over_field, smith_normal_form
from .series import MultiSeries

__all__ = ["HomologyEntry", "HomologyTable", "homology_table", "homology_at", "torsion_at",
           "euler_column", "chain_euler", "incoming_rank"]


@dataclass(frozen=True)
class HomologyEntry:
    betti: int
    torsion: Tuple[int, ...] = ()


@dataclass
class HomologyTable:
    spec: GeneratorSpec
    diff: DifferentialSpec
    ring: Ring
    q_max: int
    entries: Dict[Bidegree, HomologyEntry] = field(default_factory=dict)

    def betti(self, q: int, t: int) -> int:
        self._check_q(q)
        e = self.entries.get((q, t))
        return e.betti if e else 0

    def torsion(self, q: int, t: int) -> Tuple[int, ...]:
        self._check_q(q)
        e = self.entries.get((q, t))
        return e.torsion if e else ()

    def _check_q(self, q: int) -> None:
        if q > self.q_max:
            raise KeyError(f"q={q} is beyond the computed range q<={self.q_max}")

    def nonzero(self) -> List[Tuple[Bidegree, HomologyEntry]]:
        return sorted((k, v) for k, v in self.entries.items() if v.betti or v.torsion)

    def poincare_series(self) -> MultiSeries:
        """Betti numbers as a series in q, t (torsion is dropped)."""
        return MultiSeries({(0, q, t): e.betti for (q, t), e in self.entries.items() if e.betti},
                           self.q_max)

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "reduced": self.spec.reduced,
            "ring": str(self.ring),
            "diff": str(self.diff),
            "q_max": self.q_max,
            "entries": [
                {"q": q, "t": t, "betti": e.betti, "torsion": list(e.torsion)}
                for (q, t), e in self.nonzero()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "HomologyTable":
        tab = cls(GeneratorSpec(data["n"], data["reduced"]), DifferentialSpec.parse(data["diff"]),
                  Ring.parse(data["ring"]), data["q_max"])
        for e in data["entries"]:
            tab.entries[(e["q"], e["t"])] = HomologyEntry(e["betti"], tuple(e.get("torsion", ())))
        return tab

    def grid(self) -> str:
        """Human-readable q x t grid; ``a+5`` means betti a plus a Z/5 summand."""
        qs = sorted({q for (q, _), _ in self.nonzero()})
        ts = sorted({t for (_, t), _ in self.nonzero()})
        if not qs:
            return "(zero)"
        cells = {}
        for (q, t), e in self.nonzero():
            s = str(e.betti) if e.betti else ""
            if e.torsion:
                s += "+" + "+".join(str(d) for d in e.torsion)
            cells[(q, t)] = s.lstrip("+") if not e.betti else s
        width = max(3, max(len(c) for c in cells.values()) + 1)
        head = "q\\t".rjust(5) + "".join(str(t).rjust(width) for t in ts)
        lines = [head]
        for q in qs:
            lines.append(str(q).rjust(5) + "".join(cells.get((q, t), ".").rjust(width) for t in ts))
        return "\n".join(lines)


def _target(diff: DifferentialSpec, deg: Bidegree) -> Bidegree:
    dq, dt = diff.degree
    return (deg[0] + dq, deg[1] + dt)


def _source(diff: DifferentialSpec, deg: Bidegree) -> Bidegree:
    dq, dt = diff.degree
    return (deg[0] - dq, deg[1] - dt)


@lru_cache(maxsize=8192)
def _rank(spec: GeneratorSpec, diff: DifferentialSpec, deg: Bidegree, ring: Ring) -> int:
    """Rank of the differential leaving ``deg``."""
    src = enumerate_basis(spec, deg)
    tgt = enumerate_basis(spec, _target(diff, deg))
    if not src or not tgt:
        return 0
    mat = differential_matrix(spec, diff, deg, Ring.ZZ())
    return rank_over_field(mat, ring if ring.is_field else Ring.QQ())


def incoming_rank(spec: GeneratorSpec, diff: DifferentialSpec, deg: Bidegree, ring: Ring) -> int:
    return _rank(spec, diff, _source(diff, deg), ring)


def torsion_at(spec: GeneratorSpec, deg: Bidegree, diff: DifferentialSpec | None = None) -> List[int]:
    """Elementary divisors > 1 of the integral homology at ``deg``."""
    diff = diff or DifferentialSpec.standard()
    src = _source(diff, deg)
    if not enumerate_basis(spec, src) or not enumerate_basis(spec, deg):
        return []
    mat = differential_matrix(spec, diff, src, Ring.ZZ())
    return list(smith_normal_form(mat).torsion)


def homology_at(spec: GeneratorSpec, diff: DifferentialSpec, ring: Ring, deg: Bidegree) -> HomologyEntry:
    dim = len(enumerate_basis(spec, deg))
    if dim == 0:
        return HomologyEntry(0)
    betti = dim - _rank(spec, diff, deg, ring) - incoming_rank(spec, diff, deg, ring)
    tors: Tuple[int, ...] = ()
    if ring.kind == "ZZ":
        tors = tuple(torsion_at(spec, deg, diff))
    return HomologyEntry(betti, tors)


def homology_table(spec: GeneratorSpec, diff: DifferentialSpec, ring: Ring, q_max: int) -> HomologyTable:
    """Homology at every bidegree with ``q <= q_max``.

    Over Z every incoming map is put in Smith normal form, which is the
    expensive part; prefer a field unless torsion is needed.
    """
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    table = HomologyTable(spec, diff, ring, q_max)
    for q in range(0, q_max + 1, 2):
        for t in t_range(spec, q):
            e = homology_at(spec, diff, ring, (q, t))
            if e.betti or e.torsion:
                table.entries[(q, t)] = e
    return table


def euler_column(table: HomologyTable, q: int) -> int:
    """``sum_t (-1)^t betti(q, t)``."""
    if q > table.q_max or q < 0:
        raise ValueError(f"column q={q} is not in the table (q_max={table.q_max})")
    return sum((-1) ** t * e.betti for (qq, t), e in table.entries.items() if qq == q)


def chain_euler(spec: GeneratorSpec, q: int) -> int:
    """``sum_t (-1)^t dim C(q, t)``."""
    return sum((-1) ** t * len(enumerate_basis(spec, (q, t))) for t in t_range(spec, q))
