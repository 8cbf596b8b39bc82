"""The free bigraded graded-commutative algebra and its differentials.

Even generators ``x_k`` sit in bidegree ``(q, t) = (2k+2, 2k)`` and odd
generators ``xi_i`` in ``(2i+4, 2i+1)``.  The reduced variant drops index 0.

Sign convention: a monomial stores its odd factors with strictly increasing
indices, and an odd derivation replacing the j-th odd factor (1-based)
contributes the sign ``(-1)^(j-1)``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .linalg import Ring, SparseMatrix, rank_over_field

__all__ = [
    "GeneratorSpec",
    "Monomial",
    "Element",
    "DifferentialSpec",
    "Bidegree",
    "enumerate_basis",
    "apply_differential",
    "differential_matrix",
    "coef_xpow",
    "potential",
    "partial_derivative",
    "lower_ideal_dim",
    "export_matrix",
]

Bidegree = Tuple[int, int]


@dataclass(frozen=True)
class GeneratorSpec:
    """``n`` index pairs; ``reduced`` drops ``x_0`` and ``xi_0``."""

    n: int
    reduced: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def indices(self) -> range:
        return range(1, self.n) if self.reduced else range(self.n)

    def __str__(self) -> str:
        return f"n={self.n}{',reduced' if self.reduced else ''}"


def x_degree(k: int) -> Bidegree:
    return (2 * k + 2, 2 * k)


def xi_degree(i: int) -> Bidegree:
    return (2 * i + 4, 2 * i + 1)


@dataclass(frozen=True, order=True)
class Monomial:
    """``prod x_k^{x_exponents[k]} * xi_{i_1} ... xi_{i_s}`` with ``i_1 < ... < i_s``."""

    x_exponents: Tuple[int, ...]
    xi_set: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(e < 0 for e in self.x_exponents):
            raise ValueError("negative exponent")
        if any(a >= b for a, b in zip(self.xi_set, self.xi_set[1:])):
            raise ValueError("xi indices must be strictly increasing")

    @classmethod
    def of(cls, n: int, xs: Iterable[int] = (), xis: Iterable[int] = ()) -> "Monomial":
        """Build from a multiset of x-indices and a set of xi-indices (any order)."""
        exps = [0] * n
        for k in xs:
            exps[k] += 1
        xis = tuple(xis)
        if len(set(xis)) != len(xis):
            raise ValueError("repeated odd generator")
        return cls(tuple(exps), tuple(sorted(xis)))

    @property
    def bidegree(self) -> Bidegree:
        q = t = 0
        for k, e in enumerate(self.x_exponents):
            q += e * (2 * k + 2)
            t += e * 2 * k
        for i in self.xi_set:
            q += 2 * i + 4
            t += 2 * i + 1
        return (q, t)

    @property
    def x_total(self) -> int:
        return sum(self.x_exponents)

    def __str__(self) -> str:
        parts = []
        for k, e in enumerate(self.x_exponents):
            if e:
                parts.append(f"x{k}" + (f"^{e}" if e > 1 else ""))
        parts += [f"xi{i}" for i in self.xi_set]
        return "*".join(parts) or "1"


def _sort_sign(seq: List[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 if an index repeats)."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _mono_mul(m1: Monomial, m2: Monomial) -> Tuple[int, Optional[Monomial]]:
    sign, xis = _sort_sign(list(m1.xi_set) + list(m2.xi_set))
    if sign == 0:
        return 0, None
    size = max(len(m1.x_exponents), len(m2.x_exponents))
    e1 = m1.x_exponents + (0,) * (size - len(m1.x_exponents))
    e2 = m2.x_exponents + (0,) * (size - len(m2.x_exponents))
    return sign, Monomial(tuple(a + b for a, b in zip(e1, e2)), xis)


class Element:
    """Finite linear combination of monomials with exact coefficients.

    Coefficients are ``int`` or ``Fraction``; ``ring`` records where they are
    meant to live and is used when reducing modulo a prime.
    """

    __slots__ = ("terms", "ring")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, ring: Ring | None = None):
        self.ring = ring or Ring.QQ()
        clean = {}
        for m, c in (terms or {}).items():
            c = self.ring.normalize(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms: Dict[Monomial, object] = {m: c for m, c in clean.items() if c}

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1, ring: Ring | None = None) -> "Element":
        return cls({m: coeff}, ring)

    @classmethod
    def x(cls, n: int, k: int, ring: Ring | None = None) -> "Element":
        return cls.from_monomial(Monomial.of(n, xs=[k]), ring=ring)

    @classmethod
    def xi(cls, n: int, i: int, ring: Ring | None = None) -> "Element":
        return cls.from_monomial(Monomial.of(n, xis=[i]), ring=ring)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other: "Element", sign: int) -> "Element":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + sign * c
        return Element(out, self.ring)

    def __add__(self, other: "Element") -> "Element":
        return self._combine(other, 1)

    def __sub__(self, other: "Element") -> "Element":
        return self._combine(other, -1)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self.terms.items()}, self.ring)

    def scale(self, c) -> "Element":
        return Element({m: c * v for m, v in self.terms.items()}, self.ring)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = _mono_mul(m1, m2)
                if sign:
                    out[m] = out.get(m, 0) + sign * c1 * c2
        return Element(out, self.ring)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def bidegrees(self) -> set:
        return {m.bidegree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    @property
    def bidegree(self) -> Optional[Bidegree]:
        degs = self.bidegrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return next(iter(degs), None)

    def has_odd(self) -> bool:
        return any(m.xi_set for m in self.terms)

    def coefficients(self) -> List[object]:
        return list(self.terms.values())

    def to_ring(self, ring: Ring) -> "Element":
        return Element(self.terms, ring)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_basis_key):
            c = self.terms[m]
            parts.append(f"{c}*{m}" if c != 1 else str(m))
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# differentials


@dataclass(frozen=True)
class DifferentialSpec:
    """Which odd derivation acts.

    ``kind`` is ``"d2"`` (all quadratic coefficients 1), ``"d2_generic"``
    (coefficients drawn from ``seed``) or ``"d1"`` (``xi_i -> x_i``).
    """

    kind: str = "d2"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("d2", "d2_generic", "d1"):
            raise ValueError(f"unknown differential kind {self.kind!r}")
        if self.kind == "d2_generic" and self.seed is None:
            raise ValueError("generic coefficients need a seed")

    @classmethod
    def standard(cls) -> "DifferentialSpec":
        return cls("d2")

    @classmethod
    def generic(cls, seed: int) -> "DifferentialSpec":
        return cls("d2_generic", seed)

    @classmethod
    def lee(cls) -> "DifferentialSpec":
        return cls("d1")

    @classmethod
    def parse(cls, token: str) -> "DifferentialSpec":
        if token in ("standard", "d2"):
            return cls.standard()
        if token in ("d1", "lee"):
            return cls.lee()
        if token.startswith("generic:"):
            return cls.generic(int(token.split(":", 1)[1]))
        raise ValueError(f"unknown differential {token!r}")

    @property
    def degree(self) -> Bidegree:
        return (-2, -1) if self.kind == "d1" else (0, -1)

    def coefficients(self, n: int) -> Dict[Tuple[int, int], int]:
        """``alpha[(i, m)]`` multiplying ``x_i x_{m-i}`` in the image of ``xi_m``."""
        if self.kind == "d2":
            return {(i, m): 1 for m in range(n) for i in range(m + 1)}
        if self.kind == "d2_generic":
            return _generic_alpha(n, self.seed)
        return {}

    def __str__(self) -> str:
        return {"d2": "standard", "d1": "d1"}.get(self.kind, f"generic:{self.seed}")


@lru_cache(maxsize=None)
def _generic_alpha_cached(n: int, seed: int) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    rng = random.Random(seed)
    return tuple(((i, m), rng.randint(1, 9973)) for m in range(n) for i in range(m + 1))


def _generic_alpha(n: int, seed: int) -> Dict[Tuple[int, int], int]:
    return dict(_generic_alpha_cached(n, seed))


@lru_cache(maxsize=None)
def _generator_image(spec: GeneratorSpec, diff: DifferentialSpec, m: int) -> Tuple[Tuple[Monomial, int], ...]:
    """Image of ``xi_m`` as a tuple of (x-monomial, integer coefficient)."""
    n = spec.n
    out: Dict[Monomial, int] = {}
    if diff.kind == "d1":
        out[Monomial.of(n, xs=[m])] = 1
    else:
        alpha = diff.coefficients(n)
        lo, hi = (1, m - 1) if spec.reduced else (0, m)
        for i in range(lo, hi + 1):
            mono = Monomial.of(n, xs=[i, m - i])
            out[mono] = out.get(mono, 0) + alpha[(i, m)]
    return tuple((mono, c) for mono, c in out.items() if c)


def _apply_to_monomial(spec: GeneratorSpec, diff: DifferentialSpec, mono: Monomial) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    xs = mono.x_exponents
    for j, i in enumerate(mono.xi_set):
        sign = -1 if j % 2 else 1
        rest = mono.xi_set[:j] + mono.xi_set[j + 1:]
        for img, c in _generator_image(spec, diff, i):
            new = Monomial(tuple(a + b for a, b in zip(xs, img.x_exponents)), rest)
            out[new] = out.get(new, 0) + sign * c
    return {m: c for m, c in out.items() if c}


def apply_differential(spec: GeneratorSpec, diff: DifferentialSpec, e: Element) -> Element:
    """Extend ``diff`` to ``e`` as an odd derivation vanishing on the x's."""
    if not e.is_homogeneous():
        raise ValueError("apply_differential needs a homogeneous element")
    out: Dict[Monomial, object] = {}
    for mono, c in e.terms.items():
        _check_in_spec(spec, mono)
        for m, v in _apply_to_monomial(spec, diff, mono).items():
            out[m] = out.get(m, 0) + c * v
    return Element(out, e.ring)


def _check_in_spec(spec: GeneratorSpec, mono: Monomial) -> None:
    if len(mono.x_exponents) != spec.n:
        raise ValueError(f"monomial {mono} does not belong to spec {spec}")
    if spec.reduced and (mono.x_exponents[0] or (mono.xi_set and mono.xi_set[0] == 0)):
        raise ValueError(f"monomial {mono} uses index 0 in a reduced spec")


# ---------------------------------------------------------------------------
# bases


def _basis_key(m: Monomial):
    # graded-lex on x exponents (lex-larger first), then the xi tuple
    return (m.x_total, tuple(-e for e in m.x_exponents), m.xi_set)


@lru_cache(maxsize=None)
def _monomials_of_q(spec: GeneratorSpec, q: int) -> Dict[int, Tuple[Monomial, ...]]:
    """All monomials of q-degree ``q`` grouped by t-degree."""
    by_t: Dict[int, List[Monomial]] = {}
    if q % 2:
        return {}
    half = q // 2
    idx = list(spec.indices)
    n = spec.n

    # xi subsets first (half-weight i + 2 each), then x multisets (half-weight k + 1)
    def xi_subsets(pos: int, budget: int, chosen: List[int]):
        yield list(chosen), budget
        for j in range(pos, len(idx)):
            w = idx[j] + 2
            if w > budget:
                break
            chosen.append(idx[j])
            yield from xi_subsets(j + 1, budget - w, chosen)
            chosen.pop()

    def x_multisets(pos: int, budget: int, chosen: List[int]):
        if budget == 0:
            yield list(chosen)
            return
        for j in range(pos, len(idx)):
            w = idx[j] + 1
            if w > budget:
                break
            chosen.append(idx[j])
            yield from x_multisets(j, budget - w, chosen)
            chosen.pop()

    for xis, rest in xi_subsets(0, half, []):
        for xs in x_multisets(0, rest, []):
            m = Monomial.of(n, xs, xis)
            by_t.setdefault(m.bidegree[1], []).append(m)
    return {t: tuple(sorted(ms, key=_basis_key)) for t, ms in by_t.items()}


def enumerate_basis(spec: GeneratorSpec, deg: Bidegree) -> List[Monomial]:
    """Monomials of exactly bidegree ``deg`` in canonical (graded-lex) order."""
    q, t = deg
    if q < 0 or t < 0 or (q - t) < 0:
        return []
    return list(_monomials_of_q(spec, q).get(t, ()))


def t_range(spec: GeneratorSpec, q: int) -> List[int]:
    """Sorted t-degrees with a nonzero chain group at q-degree ``q``."""
    return sorted(_monomials_of_q(spec, q)) if q >= 0 else []


@lru_cache(maxsize=4096)
def _index_of(spec: GeneratorSpec, deg: Bidegree) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(enumerate_basis(spec, deg))}


def differential_matrix(spec: GeneratorSpec, diff: DifferentialSpec, deg: Bidegree,
                        ring: Ring | None = None) -> SparseMatrix:
    """Matrix of ``diff`` from bidegree ``deg`` to ``deg + diff.degree``.

    Columns follow ``enumerate_basis(spec, deg)``, rows the target basis.
    """
    ring = ring or Ring.ZZ()
    dq, dt = diff.degree
    target = (deg[0] + dq, deg[1] + dt)
    source = enumerate_basis(spec, deg)
    rows = _index_of(spec, target)
    entries: Dict[Tuple[int, int], int] = {}
    for col, mono in enumerate(source):
        for img, c in _apply_to_monomial(spec, diff, mono).items():
            entries[(rows[img], col)] = c
    return SparseMatrix(len(rows), len(source), entries, ring)


def basis_hash(basis: Iterable[Monomial]) -> str:
    h = hashlib.sha256()
    for m in basis:
        h.update(repr((m.x_exponents, m.xi_set)).encode())
    return h.hexdigest()[:16]


def export_matrix(spec: GeneratorSpec, diff: DifferentialSpec, deg: Bidegree,
                  ring: Ring | None = None) -> str:
    """Sparse triplet text: ``#`` header lines, then ``row col value`` per entry."""
    ring = ring or Ring.ZZ()
    mat = differential_matrix(spec, diff, deg, ring)
    dq, dt = diff.degree
    src = enumerate_basis(spec, deg)
    tgt = enumerate_basis(spec, (deg[0] + dq, deg[1] + dt))
    lines = [
        f"# spec {spec}",
        f"# diff {diff}",
        f"# bidegree {deg[0]} {deg[1]}",
        f"# ring {ring}",
        f"# shape {mat.rows} {mat.cols}",
        f"# basis {basis_hash(src)} {basis_hash(tgt)}",
    ]
    lines += [f"{r} {c} {v}" for (r, c), v in sorted(mat.entries.items())]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generating-function coefficients and the potential


def coef_xpow(spec: GeneratorSpec, power: int, j: int) -> Element:
    """Coefficient of ``z^j`` in ``x(z)^power`` (power 2 or 3), integer coefficients."""
    if power not in (2, 3):
        raise ValueError("power must be 2 or 3")
    if j < 0:
        raise ValueError("j must be non-negative")
    n = spec.n
    idx = [k for k in spec.indices]
    out: Dict[Monomial, int] = {}
    if power == 2:
        for a in idx:
            b = j - a
            if b in idx:
                m = Monomial.of(n, xs=[a, b])
                out[m] = out.get(m, 0) + 1
    else:
        for a in idx:
            for b in idx:
                c = j - a - b
                if c in idx:
                    m = Monomial.of(n, xs=[a, b, c])
                    out[m] = out.get(m, 0) + 1
    return Element(out, Ring.ZZ())


def potential(n: int) -> Element:
    """Cubic potential ``-(1/6) Coef_{n-1}[x(z)^3]`` in ``x_0..x_{n-1}`` over Q."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cube = coef_xpow(GeneratorSpec(n), 3, n - 1)
    return Element({m: Fraction(-c, 6) for m, c in cube.terms.items()}, Ring.QQ())


def partial_derivative(e: Element, index: int) -> Element:
    """Formal derivative in ``x_index`` of an element without odd generators."""
    if e.has_odd():
        raise ValueError("partial_derivative is defined on polynomials in x only")
    out: Dict[Monomial, object] = {}
    for m, c in e.terms.items():
        if index >= len(m.x_exponents):
            continue
        k = m.x_exponents[index]
        if k:
            exps = list(m.x_exponents)
            exps[index] -= 1
            nm = Monomial(tuple(exps))
            out[nm] = out.get(nm, 0) + k * c
    return Element(out, e.ring)


def lower_ideal_dim(n: int, deg: Bidegree, ring: Ring | None = None) -> int:
    """Dimension of the ``deg`` piece of the ideal generated by ``Coef_j[x(z)^2]``, j < n."""
    ring = ring or Ring.QQ()
    spec = GeneratorSpec(n)
    q, t = deg
    target = [m for m in enumerate_basis(spec, deg) if not m.xi_set]
    if not target:
        return 0
    rows = {m: i for i, m in enumerate(target)}
    cols: List[Dict[int, int]] = []
    for j in range(n):
        gen = coef_xpow(spec, 2, j)
        gq, gt = 2 * j + 4, 2 * j
        for mono in enumerate_basis(spec, (q - gq, t - gt)):
            if mono.xi_set:
                continue
            col: Dict[int, int] = {}
            for g, c in gen.terms.items():
                _, prod = _mono_mul(mono, g)
                col[rows[prod]] = col.get(rows[prod], 0) + c
            cols.append(col)
    entries = {(r, ci): v for ci, col in enumerate(cols) for r, v in col.items() if v}
    return rank_over_field(SparseMatrix(len(target), len(cols), entries, ring), ring)


def lower_quotient_dim(n: int, deg: Bidegree, ring: Ring | None = None) -> int:
    spec = GeneratorSpec(n)
    polys = sum(1 for m in enumerate_basis(spec, deg) if not m.xi_set)
    return polys - lower_ideal_dim(n, deg, ring)
