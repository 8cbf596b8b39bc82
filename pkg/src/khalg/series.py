"""Truncated trigraded power series with exact integer coefficients.

A :class:`MultiSeries` is a finite map ``(a, q, t) -> int`` together with an
inclusive q-cutoff.  Everything that is a Poincare or Hilbert series in this
package lives in this type: the bosonic alternating sums, the fermionic state
sums, both sides of the Rogers-Ramanujan type identities and the closed form
over Z/2.

Truncation is by q-exponent only.  Every factor used below has a strictly
positive q-exponent except for a handful of explicit finite binomials, so a
coefficient with ``q <= q_cutoff`` is always exact.
"""

from __future__ import annotations

import json
from collections import defaultdict
from itertools import count
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Exponent = Tuple[int, int, int]  # (a, q, t)

__all__ = [
    "MultiSeries",
    "add",
    "mul",
    "geometric_inverse",
    "z_binomial",
    "eval_t_minus1",
    "bosonic_lower",
    "bosonic_full",
    "bosonic_reduced",
    "z2_closed_form",
    "fermionic_recursive",
    "fermionic_limit",
    "krr_side",
    "rr_side",
]


class CutoffMismatch(ValueError):
    """Raised when two series with different q-cutoffs are combined."""


class MultiSeries:
    """Immutable truncated series in the gradings a, q, t.

    Parameters
    ----------
    terms : mapping
        ``{(a, q, t): coefficient}``.  Zero coefficients are dropped and terms
        above ``q_cutoff`` are discarded.
    q_cutoff : int
        Inclusive maximum q-exponent that is retained.

    Examples
    --------
    >>> s = MultiSeries({(0, 0, 0): 1, (0, 2, 0): 1}, q_cutoff=4)
    >>> (s * s).coefficient(q=2)
    2
    """

    __slots__ = ("_terms", "_cutoff", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, q_cutoff: int = 0):
        if q_cutoff < 0:
            raise ValueError("q_cutoff must be non-negative")
        clean: Dict[Exponent, int] = {}
        for key, c in (terms or {}).items():
            a, q, t = key
            if a < 0 or q < 0 or t < 0:
                raise ValueError(f"negative exponent in term {key}")
            if c and q <= q_cutoff:
                clean[(int(a), int(q), int(t))] = int(c)
        self._terms = clean
        self._cutoff = int(q_cutoff)
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def one(cls, q_cutoff: int) -> "MultiSeries":
        return cls({(0, 0, 0): 1}, q_cutoff)

    @classmethod
    def zero(cls, q_cutoff: int) -> "MultiSeries":
        return cls({}, q_cutoff)

    @classmethod
    def monomial(cls, q: int, t: int = 0, a: int = 0, coeff: int = 1,
                 q_cutoff: int = 0) -> "MultiSeries":
        return cls({(a, q, t): coeff}, q_cutoff)

    @classmethod
    def _trusted(cls, terms: Dict[Exponent, int], q_cutoff: int) -> "MultiSeries":
        # skips validation; callers guarantee pruned, in-range, non-negative keys
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._cutoff = q_cutoff
        obj._hash = None
        return obj

    # read access ----------------------------------------------------------

    @property
    def q_cutoff(self) -> int:
        return self._cutoff

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, key: Exponent) -> int:
        return self._terms.get(key, 0)

    def coefficient(self, q: int, t: int | None = None, a: int | None = None) -> int:
        """Coefficient of ``a^a q^q t^t``; ``None`` sums over that grading."""
        return sum(
            c
            for (ka, kq, kt), c in self._terms.items()
            if kq == q and (t is None or kt == t) and (a is None or ka == a)
        )

    def min_q(self) -> int | None:
        return min((k[1] for k in self._terms), default=None)

    def has_a_grading(self) -> bool:
        return any(k[0] for k in self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0]))

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "MultiSeries") -> None:
        if self._cutoff != other._cutoff:
            raise CutoffMismatch(f"q cutoffs differ: {self._cutoff} != {other._cutoff}")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MultiSeries._trusted(out, self._cutoff)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries._trusted({k: -c for k, c in self._terms.items()}, self._cutoff)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, c: int) -> "MultiSeries":
        if c == 0:
            return MultiSeries.zero(self._cutoff)
        return MultiSeries._trusted({k: c * v for k, v in self._terms.items()}, self._cutoff)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        cut = self._cutoff
        # iterate the smaller operand in the outer loop
        left, right = sorted((self._terms, other._terms), key=len)
        right_sorted = sorted(right.items(), key=lambda kv: kv[0][1])
        out: Dict[Exponent, int] = defaultdict(int)
        for (a1, q1, t1), c1 in left.items():
            room = cut - q1
            for (a2, q2, t2), c2 in right_sorted:
                if q2 > room:
                    break
                out[(a1 + a2, q1 + q2, t1 + t2)] += c1 * c2
        return MultiSeries._trusted({k: v for k, v in out.items() if v}, cut)

    __rmul__ = __mul__

    def shift(self, q: int = 0, t: int = 0, a: int = 0, coeff: int = 1) -> "MultiSeries":
        """Multiply by the single term ``coeff * a^a q^q t^t``."""
        if q < 0:
            raise ValueError("q shift must be non-negative")
        cut = self._cutoff
        out = {(ka + a, kq + q, kt + t): coeff * c
               for (ka, kq, kt), c in self._terms.items() if kq + q <= cut}
        return MultiSeries._trusted({k: v for k, v in out.items() if v}, cut)

    def times_binomial(self, q: int, t: int = 0, a: int = 0, sign: int = 1) -> "MultiSeries":
        """Multiply by ``1 + sign * a^a q^q t^t`` in one pass."""
        return self + self.shift(q, t, a, sign)

    def divide_binomial(self, q: int, t: int = 0, a: int = 0, sign: int = -1) -> "MultiSeries":
        """Multiply by ``1 / (1 + sign * a^a q^q t^t)``; requires ``q >= 1``.

        Solves ``r = s - sign * m * r`` level by level in q.
        """
        if q < 1:
            raise ValueError("cannot invert a factor with zero q-exponent")
        cut = self._cutoff
        buckets: Dict[int, Dict[Exponent, int]] = defaultdict(dict)
        for k, c in self._terms.items():
            buckets[k[1]][k] = c
        step = -sign
        out: Dict[Exponent, int] = {}
        for qv in range(cut + 1):
            level = buckets.pop(qv, None)
            if not level:
                continue
            nq = qv + q
            for (ka, kq, kt), c in level.items():
                if not c:
                    continue
                out[(ka, kq, kt)] = c
                if nq <= cut:
                    tgt = buckets[nq]
                    key = (ka + a, nq, kt + t)
                    tgt[key] = tgt.get(key, 0) + step * c
        return MultiSeries._trusted(out, cut)

    def truncate(self, q_cutoff: int) -> "MultiSeries":
        """Return the same series with a smaller (or equal) cutoff."""
        if q_cutoff > self._cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return MultiSeries({k: c for k, c in self._terms.items() if k[1] <= q_cutoff}, q_cutoff)

    def substitute_a(self, q: int = 0, t: int = 0) -> "MultiSeries":
        """Replace every ``a`` by ``q^q t^t`` (per unit of a-exponent)."""
        out: Dict[Exponent, int] = defaultdict(int)
        for (ka, kq, kt), c in self._terms.items():
            nq = kq + q * ka
            if nq <= self._cutoff:
                out[(0, nq, kt + t * ka)] += c
        return MultiSeries._trusted({k: v for k, v in out.items() if v}, self._cutoff)

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self._cutoff == other._cutoff and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._cutoff, frozenset(self._terms.items())))
        return self._hash

    def first_difference(self, other: "MultiSeries", q_max: int | None = None,
                         t_max: int | None = None):
        """First ``((a, q, t), lhs, rhs)`` mismatch in (q, t, a) order, or None."""
        keys = set(self._terms) | set(other._terms)
        for k in sorted(keys, key=lambda k: (k[1], k[2], k[0])):
            if q_max is not None and k[1] > q_max:
                continue
            if t_max is not None and k[2] > t_max:
                continue
            if self[k] != other[k]:
                return k, self[k], other[k]
        return None

    # serialisation --------------------------------------------------------

    def to_records(self) -> list:
        return [{"a": a, "q": q, "t": t, "coeff": str(c)} for (a, q, t), c in self.sorted_terms()]

    def to_json(self, **extra) -> str:
        payload = dict(extra)
        payload["q_cutoff"] = self._cutoff
        payload["terms"] = self.to_records()
        return json.dumps(payload, indent=1)

    @classmethod
    def from_records(cls, records: Iterable[dict], q_cutoff: int) -> "MultiSeries":
        terms: Dict[Exponent, int] = defaultdict(int)
        for r in records:
            terms[(int(r.get("a", 0)), int(r["q"]), int(r["t"]))] += int(r["coeff"])
        return cls(terms, q_cutoff)

    @classmethod
    def from_json(cls, text: str) -> "MultiSeries":
        data = json.loads(text)
        if isinstance(data, list):
            recs = data
            cut = max((int(r["q"]) for r in recs), default=0)
        else:
            recs = data["terms"]
            cut = int(data["q_cutoff"])
        return cls.from_records(recs, cut)

    def __repr__(self) -> str:
        if not self._terms:
            body = "0"
        else:
            parts = []
            for (a, q, t), c in self.sorted_terms()[:12]:
                mono = "".join(
                    f"{v}^{e}" if e > 1 else v
                    for v, e in (("a", a), ("q", q), ("t", t)) if e
                ) or "1"
                parts.append(mono if c == 1 else f"{c}*{mono}")
            body = " + ".join(parts)
            if len(self._terms) > 12:
                body += " + ..."
        return f"MultiSeries({body}; q<={self._cutoff})"


# ---------------------------------------------------------------------------
# spec-level operations


def add(s1: MultiSeries, s2: MultiSeries) -> MultiSeries:
    return s1 + s2


def mul(s1: MultiSeries, s2: MultiSeries) -> MultiSeries:
    return s1 * s2


def geometric_inverse(q_exp: int, t_exp: int, a_exp: int, sign: int, cutoff: int) -> MultiSeries:
    """Expansion of ``1 / (1 - sign * m)`` with ``m = a^a_exp q^q_exp t^t_exp``.

    ``sign=+1`` gives ``sum m^k``; ``sign=-1`` gives ``sum (-m)^k``.
    """
    if q_exp < 1:
        raise ValueError("geometric_inverse needs a positive q-exponent")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    terms = {}
    for k in range(cutoff // q_exp + 1):
        terms[(a_exp * k, q_exp * k, t_exp * k)] = sign ** k
    return MultiSeries(terms, cutoff)


def _z_binomial_coeffs(m: int, l: int) -> list:
    """Integer coefficient list of the Gaussian binomial in z."""
    if m < 0 or l < 0 or l > m:
        return []
    # row[j] holds (i choose j)_z as a coefficient list
    row = [[1]]
    for i in range(1, m + 1):
        new = [[1]]
        for j in range(1, min(i, l) + 1):
            # (i choose j) = (i-1 choose j) + z^(i-j) (i-1 choose j-1)
            upper = row[j] if j < len(row) and j <= i - 1 else []
            lower = row[j - 1]
            size = max(len(upper), len(lower) + i - j)
            poly = [0] * size
            for e, c in enumerate(upper):
                poly[e] += c
            for e, c in enumerate(lower):
                poly[e + i - j] += c
            new.append(poly)
        row = new
    return row[l]


def z_binomial(m: int, l: int, cutoff: int) -> MultiSeries:
    """Gaussian binomial ``(m choose l)`` in ``z = q^2 t^2``; zero out of range."""
    coeffs = _z_binomial_coeffs(m, l)
    return MultiSeries({(0, 2 * e, 2 * e): c for e, c in enumerate(coeffs)}, cutoff)


def eval_t_minus1(s: MultiSeries) -> MultiSeries:
    """Set ``t = -1``; the result only carries q-exponents."""
    if s.has_a_grading():
        raise ValueError("cannot evaluate at t=-1 with a nonzero a-grading present")
    out: Dict[Exponent, int] = defaultdict(int)
    for (_, q, t), c in s.items():
        out[(0, q, 0)] += -c if t % 2 else c
    return MultiSeries(out, s.q_cutoff)


# ---------------------------------------------------------------------------
# product helpers


def _prod_binomials(s: MultiSeries, factors: Iterable[Tuple[int, int, int, int]]) -> MultiSeries:
    """Multiply ``s`` by ``prod (1 + sign a^a q^q t^t)`` over ``(q, t, a, sign)``."""
    for q, t, a, sign in factors:
        if q > s.q_cutoff:
            continue
        s = s.times_binomial(q, t, a, sign)
    return s


def _divide_binomials(s: MultiSeries, factors: Iterable[Tuple[int, int, int, int]]) -> MultiSeries:
    for q, t, a, sign in factors:
        if q > s.q_cutoff:
            continue
        s = s.divide_binomial(q, t, a, sign)
    return s


def _x_denominator(s: MultiSeries, indices: Iterable[int]) -> MultiSeries:
    """Divide by ``prod (1 - q^(2k) t^(2k-2))`` over the given k."""
    return _divide_binomials(s, ((2 * k, 2 * k - 2, 0, -1) for k in indices))


def _z_denominator(s: MultiSeries, p: int) -> MultiSeries:
    """Divide by ``(1 - z)(1 - z^2)...(1 - z^p)``."""
    return _divide_binomials(s, ((2 * j, 2 * j, 0, -1) for j in range(1, p + 1)))


def _binomials_vanish(m_top: int, p: int) -> bool:
    return m_top < p


# ---------------------------------------------------------------------------
# bosonic sums


def bosonic_lower(n: int, cutoff: int) -> MultiSeries:
    """Hilbert series of ``Q[x_0..x_{n-1}]`` modulo the coefficients of ``x(z)^2``.

    Alternating sum over p of z-binomial terms divided by
    ``prod_{k=1}^{n} (1 - q^{2k} t^{2k-2})``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = MultiSeries.zero(cutoff)
    for p in count():
        if _binomials_vanish(n - 2 * p + 1, p) or 5 * p * p + p > cutoff:
            break
        sign = -1 if p % 2 else 1
        front = _prod_binomials(MultiSeries.one(cutoff),
                                ((2 * k, 2 * k - 2, 0, -1) for k in range(1, p + 1)))
        bracket = (
            z_binomial(n - 2 * p + 1, p, cutoff).shift(5 * p * p + p, 5 * p * p - 3 * p)
            - z_binomial(n - 2 * p - 1, p, cutoff).shift((p + 1) * (5 * p + 4), 5 * p * p + 5 * p)
        )
        total = total + (front * bracket).scale(sign)
    return _x_denominator(total, range(1, n + 1))


def _odd_factor(k: int, n: int, q0: int, t0: int):
    """``(1 + q^{2k+q0} t^{2k+t0})`` when ``1 <= k <= n - 1``, else nothing."""
    if 1 <= k <= n - 1:
        yield (2 * k + q0, 2 * k + t0, 0, 1)


def _bosonic_numerator(n: int, cutoff: int, x_shift: int, odd_q: int, odd_t: int,
                       tail_q: int, tail_t: int, bracket) -> MultiSeries:
    """Shared skeleton of the unreduced and reduced alternating sums.

    ``n`` here is the number of index pairs of the unreduced-shaped complex.
    ``bracket(p)`` returns the bracketed series for the p-th summand.
    """
    total = MultiSeries.zero(cutoff)
    for p in count():
        if _binomials_vanish(n - 2 * p + 1, p):
            break
        br = bracket(p)
        if br is None:
            break
        sign = -1 if p % 2 else 1
        s = _prod_binomials(
            br,
            ((2 * k + x_shift, 2 * k + x_shift - 2, 0, -1) for k in range(1, p + 1)),
        )
        s = _prod_binomials(s, ((2 * k + odd_q, 2 * k + odd_t, 0, 1) for k in range(3 * p + 1, n)))
        s = _prod_binomials(s, ((2 * k + tail_q, 2 * k + tail_t, 0, 1) for k in range(1, 2 * p)))
        total = total + s.scale(sign)
    return total


def bosonic_full(n: int, cutoff: int) -> MultiSeries:
    """Conjectural Poincare series of the unreduced homology for ``n`` index pairs.

    For ``p >= 1`` the odd factors ``(1 + q^{2k+6} t^{2k+1})`` attached to the
    bracket (``k = 3p-1`` and ``k = 3p``) are present only when ``k <= n-1``,
    and the ``p = 0`` bracket is ``1 - q^4``.  This is the reading that
    reproduces the tabulated products for ``n = 2..7`` and ``P_2``, ``P_3``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")

    def bracket(p: int) -> MultiSeries | None:
        if 5 * p * p + p > cutoff:
            return None
        if p == 0:
            return MultiSeries.one(cutoff) - z_binomial(n - 1, 0, cutoff).shift(4)
        first = _prod_binomials(
            z_binomial(n - 2 * p + 1, p, cutoff),
            [*_odd_factor(3 * p - 1, n, 6, 1), *_odd_factor(3 * p, n, 6, 1)],
        ).shift(5 * p * p + p, 5 * p * p - 3 * p)
        second = _prod_binomials(
            z_binomial(n - 2 * p, p, cutoff),
            [*_odd_factor(3 * p, n, 6, 1), (2 * p + 2, 2 * p, 0, -1)],
        ).shift(5 * p * p + 7 * p + 2, 5 * p * p + 3 * p - 1)
        third = _prod_binomials(
            z_binomial(n - 2 * p - 1, p, cutoff),
            [(2 * p + 2, 2 * p + 1, 0, 1), (4 * p + 2, 4 * p - 1, 0, 1)],
        ).shift(5 * p * p + 9 * p + 4, 5 * p * p + 5 * p)
        return first + second - third

    num = _bosonic_numerator(n, cutoff, 0, 6, 1, 2, -1, bracket)
    return _x_denominator(num, range(1, n + 1))


def bosonic_reduced(n: int, cutoff: int) -> MultiSeries:
    """Conjectural Poincare series of the reduced homology for ``n`` index pairs.

    The reduced sum is the unreduced one for ``n - 2`` pairs with every
    grading shifted; the odd-factor product runs up to ``k = n - 3`` and the
    z-binomials have top arguments ``n - 2p - 1``, ``n - 2p - 2``,
    ``n - 2p - 3``.  This is the reading matching the tabulated reduced
    products for ``n = 3..7``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    m = n - 2

    def bracket(p: int) -> MultiSeries | None:
        if 5 * p * p + 5 * p > cutoff:
            return None
        if p == 0:
            return z_binomial(m + 1, 0, cutoff) - z_binomial(m - 1, 0, cutoff).shift(8, 4)
        first = _prod_binomials(
            z_binomial(m - 2 * p + 1, p, cutoff),
            [*_odd_factor(3 * p - 1, m, 12, 7), *_odd_factor(3 * p, m, 12, 7)],
        ).shift(5 * p * p + 5 * p, 5 * p * p + p)
        second = _prod_binomials(
            z_binomial(m - 2 * p, p, cutoff),
            [*_odd_factor(3 * p, m, 12, 7), (2 * p + 4, 2 * p + 2, 0, -1)],
        ).shift(5 * p * p + 11 * p + 6, 5 * p * p + 7 * p + 3)
        third = _prod_binomials(
            z_binomial(m - 2 * p - 1, p, cutoff),
            [(2 * p + 4, 2 * p + 3, 0, 1), (4 * p + 6, 4 * p + 3, 0, 1)],
        ).shift(5 * p * p + 13 * p + 8, 5 * p * p + 9 * p + 4)
        return first + second - third

    if m < 0:
        num = MultiSeries.one(cutoff)
    else:
        num = _bosonic_numerator(m, cutoff, 2, 12, 7, 6, 3, bracket)
    num = num.times_binomial(6, 3)
    return _divide_binomials(num, ((2 * k + 2, 2 * k, 0, -1) for k in range(1, n)))


# ---------------------------------------------------------------------------
# closed form over Z/2


def z2_closed_form(n: int, cutoff: int) -> MultiSeries:
    """Poincare series of the homology with Z/2 coefficients (a double product)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = MultiSeries.one(cutoff)
    s = _prod_binomials(s, ((2 * i + 4, 2 * i + 1, 0, 1) for i in range(n)))
    s = _prod_binomials(s, ((4 * i + 4, 4 * i, 0, -1) for i in range((n - 1) // 2 + 1)))
    s = _divide_binomials(s, ((4 * i + 4, 4 * i + 1, 0, 1) for i in range((n - 1) // 2 + 1)))
    return _divide_binomials(s, ((2 * i + 2, 2 * i, 0, -1) for i in range(n)))


# ---------------------------------------------------------------------------
# fermionic side


def fermionic_recursive(n: int, cutoff: int) -> MultiSeries:
    """``K_n`` from the three-term recursion, seeded by the state sums for n <= 3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    from .states import state_sum

    ks = [state_sum(k, cutoff) for k in (1, 2, 3)]
    if n <= 3:
        return ks[n - 1]
    k3, k2, k1 = ks[2], ks[1], ks[0]
    for m in range(4, n + 1):
        nxt = k3 + k2.shift(2 * m, 2 * m - 2) + k1.shift(2 * m + 4, 2 * m - 1)
        k1, k2, k3 = k2, k3, nxt
    return k3


def fermionic_limit(cutoff: int) -> MultiSeries:
    """The limit ``K(q, t)`` of the state sums as a sum over the number of blocks."""
    total = MultiSeries.zero(cutoff)
    u = MultiSeries.one(cutoff)  # U_p without its leading monomial
    for p in count():
        lead_q, lead_t = 2 * p * p, 2 * p * (p - 1)
        if lead_q > cutoff:
            break
        if p > 0:
            u = u.times_binomial(2 * p + 4, 2 * p + 1).divide_binomial(2 * p, 2 * p)
        term = u.times_binomial(8 * p + 12, 8 * p + 5).shift(lead_q, lead_t)
        total = total + term
    return total


def krr_side(side: str, cutoff: int) -> MultiSeries:
    """One side of the trigraded (a, q, t) Rogers-Ramanujan type identity.

    ``side`` is ``"A"`` (fermionic) or ``"B"`` (bosonic).  The a-exponent is
    stored literally, so ``a^2`` terms have ``a_exp == 2``.  Setting
    ``a = q^2`` recovers :func:`fermionic_limit` from ``A``.
    """
    side = side.upper()
    if side == "A":
        total = MultiSeries.zero(cutoff)
        u = MultiSeries.one(cutoff)
        for p in count():
            lead_q = 2 * p * p
            if lead_q > cutoff:
                break
            if p > 0:
                u = u.times_binomial(2 * p, 2 * p + 1, 2).divide_binomial(2 * p, 2 * p)
            term = u.times_binomial(8 * p + 8, 8 * p + 5, 2).shift(lead_q, 2 * p * (p - 1))
            total = total + term
        return total
    if side == "B":
        total = MultiSeries.zero(cutoff)
        one = MultiSeries.one(cutoff)
        for p in count():
            if 5 * p * p + p > cutoff:
                break
            if p == 0:
                br = one - one.shift(4)
            else:
                first = one.times_binomial(6 * p, 6 * p - 1, 2).times_binomial(6 * p + 2, 6 * p + 1, 2)
                first = first.shift(5 * p * p + p, 5 * p * p - 3 * p)
                second = one.times_binomial(6 * p + 2, 6 * p + 1, 2).times_binomial(2 * p + 2, 2 * p, 0, -1)
                second = second.shift(5 * p * p + 7 * p - 2, 5 * p * p + 3 * p - 1, 2)
                third = one.times_binomial(2 * p - 2, 2 * p + 1, 2).times_binomial(4 * p - 2, 4 * p - 1, 2)
                third = third.shift(5 * p * p + 9 * p + 4, 5 * p * p + 5 * p)
                br = first + second - third
            s = _prod_binomials(br, ((2 * k, 2 * k - 2, 0, -1) for k in range(1, p + 1)))
            s = _z_denominator(s, p)
            s = _prod_binomials(s, ((2 * k + 2, 2 * k + 1, 2, 1)
                                    for k in range(3 * p + 1, cutoff // 2 + 1)))
            s = _prod_binomials(s, ((2 * k - 2, 2 * k - 1, 2, 1) for k in range(1, 2 * p)))
            total = total + (s if p % 2 == 0 else -s)
        return _x_denominator(total, range(1, cutoff // 2 + 1))
    raise ValueError(f"unknown side {side!r}; expected 'A' or 'B'")


def rr_side(side: str, cutoff: int) -> MultiSeries:
    """Either side of the (q, t) Rogers-Ramanujan type identity for the lower level.

    ``"left"`` is the sum of ``q^{2p^2} t^{2p(p-1)} / (z; z)_p``, ``"right"`` the
    alternating bosonic sum with infinitely many x-variables.
    """
    side = side.lower()
    if side == "left":
        total = MultiSeries.zero(cutoff)
        u = MultiSeries.one(cutoff)
        for p in count():
            if 2 * p * p > cutoff:
                break
            if p > 0:
                u = u.divide_binomial(2 * p, 2 * p)
            total = total + u.shift(2 * p * p, 2 * p * (p - 1))
        return total
    if side == "right":
        total = MultiSeries.zero(cutoff)
        one = MultiSeries.one(cutoff)
        for p in count():
            if 5 * p * p + p > cutoff:
                break
            br = one.shift(5 * p * p + p, 5 * p * p - 3 * p) - one.shift(
                (p + 1) * (5 * p + 4), 5 * p * p + 5 * p)
            s = _prod_binomials(br, ((2 * k, 2 * k - 2, 0, -1) for k in range(1, p + 1)))
            s = _z_denominator(s, p)
            total = total + (s if p % 2 == 0 else -s)
        return _x_denominator(total, range(1, cutoff // 2 + 1))
    raise ValueError(f"unknown side {side!r}; expected 'left' or 'right'")
