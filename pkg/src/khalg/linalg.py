"""Exact sparse linear algebra over Z, Q and Z/p.

Rank over Q uses row elimination with integer rows kept primitive (divided
by their content after every update), which keeps entries small.  Rank over
Z/p is ordinary modular elimination.  The Smith normal form is a dense
deterministic routine meant for the moderate block sizes that occur per
bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

__all__ = ["Ring", "SparseMatrix", "SNFResult", "rank_over_field", "smith_normal_form",
           "solve_over_field", "is_prime"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: ``"ZZ"``, ``"QQ"`` or ``"GF"`` with a prime ``p``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF"):
            raise ValueError(f"unknown ring {self.kind!r}")
        if self.kind == "GF" and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def ZZ(cls) -> "Ring":
        return cls("ZZ")

    @classmethod
    def QQ(cls) -> "Ring":
        return cls("QQ")

    @classmethod
    def GF(cls, p: int) -> "Ring":
        return cls("GF", p)

    @classmethod
    def parse(cls, token: str) -> "Ring":
        """``q`` / ``Q``, ``int`` / ``Z``, or ``zp:<p>``."""
        tok = token.strip()
        if tok in ("q", "Q", "QQ"):
            return cls.QQ()
        if tok in ("int", "z", "Z", "ZZ"):
            return cls.ZZ()
        if tok.lower().startswith("zp:"):
            try:
                p = int(tok[3:])
            except ValueError:
                raise ValueError(f"bad prime in {token!r}") from None
            return cls.GF(p)
        raise ValueError(f"unknown ring {token!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    def normalize(self, c):
        if self.kind == "GF":
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return c % self.p
        if self.kind == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def __str__(self) -> str:
        return {"ZZ": "int", "QQ": "q"}.get(self.kind, f"zp:{self.p}")


class SparseMatrix:
    """Immutable sparse matrix: ``entries[(row, col)]`` with no stored zeros."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries: Dict[Tuple[int, int], object] | None = None,
                 ring: Ring | None = None):
        self.ring = ring or Ring.ZZ()
        self.rows, self.cols = rows, cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = self.ring.normalize(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: List[List[int]], ring: Ring | None = None) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nr, nc, ent, ring)

    def to_dense(self) -> List[List[object]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.entries

    def over(self, ring: Ring) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, self.entries, ring)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, object]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseMatrix(self.rows, other.cols, out, self.ring)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.rows, self.cols, out, self.ring)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.entries == other.entries

    def row_dicts(self) -> List[Dict[int, object]]:
        rows: List[Dict[int, object]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self) -> List[Dict[int, object]]:
        cols: List[Dict[int, object]] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, ring={self.ring})"


# ---------------------------------------------------------------------------
# rank


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _integer_row(row: Dict[int, object]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return {k: int(v * den) for k, v in row.items()}


def _rank_rational(vectors: Iterable[Dict[int, object]]) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for vec in vectors:
        row = _primitive(_integer_row(vec))
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return len(pivots)


def _rank_modp(vectors: Iterable[Dict[int, object]], p: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for vec in vectors:
        row = {k: v % p for k, v in vec.items() if v % p}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[lead]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def rank_over_field(m: SparseMatrix, field: Ring | None = None) -> int:
    """Exact rank over Q or Z/p.  A Z-tagged matrix is ranked over Q."""
    field = field or m.ring
    if m.is_zero():
        return 0
    # eliminate along the shorter dimension
    vectors = m.row_dicts() if m.rows <= m.cols else m.col_dicts()
    if field.kind == "GF":
        return _rank_modp(vectors, field.p)
    return _rank_rational(vectors)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    elementary_divisors: Tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.elementary_divisors if d > 1)


def _fix_chain(diag: List[int]) -> List[int]:
    # turn any diagonal into a divisibility chain: replace (a, b) by (gcd, lcm)
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(m: SparseMatrix) -> SNFResult:
    """Elementary divisors ``d_1 | d_2 | ...`` of an integer matrix.

    Pivot choice is the smallest nonzero magnitude, ties broken by lowest
    (row, col), so the computation is reproducible.
    """
    if m.ring.kind != "ZZ":
        m = SparseMatrix(m.rows, m.cols, {k: Ring.ZZ().normalize(v) for k, v in m.entries.items()},
                         Ring.ZZ())
    # rows as dicts; the active submatrix shrinks as pivots are fixed
    rows: Dict[int, Dict[int, int]] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
    diag: List[int] = []
    while rows:
        best = None
        for r in sorted(rows):
            for c, v in rows[r].items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, pr, pc = best
        while True:
            prow = rows[pr]
            pv = prow[pc]
            done = True
            # clear the pivot column
            for r in sorted(rows):
                if r == pr or pc not in rows[r]:
                    continue
                f = rows[r][pc] // pv
                row = rows[r]
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                if pc in row:
                    done = False
                if not row:
                    del rows[r]
            # clear the pivot row
            for c in sorted(prow):
                if c == pc:
                    continue
                f = prow[c] // pv
                if f:
                    for r in list(rows):
                        row = rows[r]
                        if pc in row:
                            nv = row.get(c, 0) - f * row[pc]
                            if nv:
                                row[c] = nv
                            else:
                                row.pop(c, None)
                if c in prow:
                    done = False
            if done:
                break
            # a remainder survived; move the pivot to the smallest entry in its row/column
            cand = [(abs(v), pr, c) for c, v in prow.items()]
            cand += [(abs(rows[r][pc]), r, pc) for r in rows if pc in rows[r]]
            _, pr, pc = min(cand)
        diag.append(abs(rows[pr][pc]))
        del rows[pr]
        for r in list(rows):
            rows[r].pop(pc, None)
            if not rows[r]:
                del rows[r]
    d = _fix_chain(diag)
    return SNFResult(tuple(d), len(d))


# ---------------------------------------------------------------------------
# linear solve


def solve_over_field(m: SparseMatrix, b: Dict[int, object], field: Ring) -> Optional[Dict[int, object]]:
    """Some ``x`` with ``m x = b`` over ``field`` (Q or Z/p), or ``None``.

    ``b`` and the result are sparse dicts (row index / column index to value).
    """
    if not field.is_field:
        raise ValueError("solve_over_field needs a field")
    p = field.p if field.kind == "GF" else 0

    def norm(v):
        if p:
            return field.normalize(v)
        return Fraction(v)

    def inv(v):
        return pow(v, -1, p) if p else 1 / v

    # augmented rows: coefficient dict on columns plus the right-hand side
    rows = m.row_dicts()
    aug = []
    for i, row in enumerate(rows):
        r = {k: norm(v) for k, v in row.items()}
        r = {k: v for k, v in r.items() if v}
        rhs = norm(b.get(i, 0))
        aug.append((r, rhs))
    for i in b:
        if not 0 <= i < m.rows:
            raise IndexError("right-hand side longer than the matrix")
    pivots: Dict[int, Tuple[Dict[int, object], object]] = {}
    for r, rhs in aug:
        r = dict(r)
        while r:
            lead = min(r)
            if lead in pivots:
                prow, prhs = pivots[lead]
                f = r[lead]
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if p:
                        nv %= p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                rhs = rhs - f * prhs
                if p:
                    rhs %= p
            else:
                s = inv(r[lead])
                prow = {k: (v * s) % p if p else v * s for k, v in r.items()}
                prhs = (rhs * s) % p if p else rhs * s
                pivots[lead] = (prow, prhs)
                break
        else:
            if rhs:
                return None
    # back substitution, highest pivot first
    x: Dict[int, object] = {}
    for lead in sorted(pivots, reverse=True):
        prow, prhs = pivots[lead]
        val = prhs
        for k, v in prow.items():
            if k != lead and k in x:
                val -= v * x[k]
        if p:
            val %= p
        if val:
            x[lead] = val
    return {k: field.normalize(v) for k, v in x.items()}
