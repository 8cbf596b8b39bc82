"""Tabulated Poincare series numerators for small n, kept as data.

Each numerator is a list of signed terms ``(sign, prefix, factors)``.  The
prefix and each factor use a compact notation: ``"q14t7"`` is ``q^14 t^7``,
``"1+q2t2+2q4t4"`` is a polynomial, and ``"prod(a,b)"`` is the product of the
odd-generator factors for ``i = a..b``: ``(1 + q^{2i+6} t^{2i+1})`` in the
unreduced table and ``(1 + q^{2i+12} t^{2i+7})`` in the reduced one.

Unreduced entries are multiplied through by ``prod_{i=1}^n (1 - q^{2i} t^{2i-2})``.
Reduced entries are the bracket multiplying
``(1 + q^6 t^3) / prod_{i=1}^{n-1} (1 - q^{2i+2} t^{2i})``.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .series import MultiSeries, geometric_inverse

__all__ = ["UNREDUCED", "REDUCED", "appendix_series", "appendix_numerator", "parse_poly"]

Term = Tuple[int, str, Tuple[str, ...]]

UNREDUCED: Dict[int, List[Term]] = {
    2: [
        (1, "1", ("1+q8t3",)),
        (-1, "q4", ("1+q8t3",)),
        (-1, "q6t2", ("1-q2", "1+q4t")),
    ],
    3: [
        (1, "1", ("1+q8t3", "1+q10t5")),
        (-1, "q4", ("1+q8t3", "1+q10t5")),
        (-1, "q6t2", ("1-q2", "1+q4t", "1+q2t2", "1+q10t5")),
        (-1, "q14t7", ("1-q2", "1-q4t2", "1+q4t")),
    ],
    4: [
        (1, "1", ("1+q8t3", "1+q10t5", "1+q12t7")),
        (-1, "q4", ("1+q8t3", "1+q10t5", "1+q12t7")),
        (-1, "q6t2", ("1-q2", "1+q4t", "1+q10t5", "1+q12t7", "1+q2t2+q4t4")),
        (-1, "q14t7", ("1-q2", "1-q4t2", "1+q4t", "1+q12t7", "1+q2t2")),
        (1, "q18t10", ("1-q2", "1+q4t", "1+q6t3", "1+q4t3")),
    ],
    5: [
        (1, "1", ("prod(1,4)",)),
        (-1, "q4", ("prod(1,4)",)),
        (-1, "q6t2", ("1-q2", "1+q4t", "1+q2t2+q4t4+q6t6", "prod(2,4)")),
        (-1, "q14t7", ("1-q2", "1-q4t2", "1+q4t", "1+q12t7", "1+q14t9", "1+q2t2+q4t4")),
        (1, "q18t10", ("1-q2", "1+q4t", "1+q6t3", "1+q2t2", "1+q14t9", "1+q4t3")),
        (1, "q22t14", ("1-q2", "1-q4t2", "1+q4t", "1+q6t3", "1+q8t5")),
    ],
    6: [
        (1, "1", ("prod(1,5)",)),
        (-1, "q4", ("prod(1,5)",)),
        (-1, "q6t2", ("1-q2", "1+q4t", "1+q2t2+q4t4+q6t6+q8t8", "prod(2,5)")),
        (-1, "q14t7", ("1-q2", "1-q4t2", "1+q4t", "1+q12t7", "1+q14t9", "1+q16t11",
                       "1+q2t2+q4t4+q6t6")),
        (1, "q18t10", ("1-q2", "1+q4t", "1+q6t3", "1+q2t2+q4t4", "1+q14t9", "1+q16t11", "1+q4t3")),
        (1, "q22t14", ("1-q2", "1-q4t2", "1+q4t", "1+q6t3", "1+q8t5", "1+q16t11", "1+q2t2+q4t4")),
        (1, "q36t25", ("1-q2", "1-q4t2", "1-q6t4", "1+q4t", "1+q6t3", "1+q8t5")),
    ],
    7: [
        (1, "1", ("prod(1,6)",)),
        (-1, "q4", ("prod(1,6)",)),
        (-1, "q6t2", ("1-q2", "1+q4t", "1+q2t2+q4t4+q6t6+q8t8+q10t10", "prod(2,6)")),
        (-1, "q14t7", ("1-q2", "1-q4t2", "1+q4t", "1+q2t2+q4t4+q6t6+q8t8", "prod(3,6)")),
        # first two factors are (1 - q^2)(1 + q^4 t)
        (1, "q18t10", ("1-q2", "1+q4t", "1+q6t3", "1+q4t3", "1+q2t2+q4t4+q6t6", "1+q14t9",
                       "1+q16t11", "1+q18t13")),
        (1, "q22t14", ("1-q2", "1-q4t2", "1+q4t", "1+q6t3", "1+q8t5", "1+q16t11", "1+q18t13",
                       "1+q2t2+2q4t4+q6t6+q8t8")),
        (1, "q36t25", ("1-q2", "1-q4t2", "1-q6t4", "1+q4t", "1+q6t3", "1+q8t5", "1+q18t13",
                       "1+q2t2+q4t4")),
        (-1, "q42t30", ("1-q2", "1-q4t2", "1+q4t", "1+q6t3", "1+q8t5", "1+q10t7", "1+q6t5")),
    ],
}

REDUCED: Dict[int, List[Term]] = {
    3: [
        (1, "1", ("1-q8t4",)),
    ],
    4: [
        (1, "1", ("1+q14t9",)),
        (-1, "q8t4", ("1+q14t9",)),
        (-1, "q10t6", ("1-q4t2", "1+q8t5")),
    ],
    5: [
        (1, "1", ("1+q14t9", "1+q16t11")),
        (-1, "q8t4", ("1+q14t9", "1+q16t11")),
        (-1, "q10t6", ("1-q4t2", "1+q8t5", "1+q2t2", "1+q16t11")),
        (-1, "q22t15", ("1-q4t2", "1-q6t4", "1+q8t5")),
    ],
    6: [
        (1, "1", ("1+q14t9", "1+q16t11", "1+q18t13")),
        (-1, "q8t4", ("1+q14t9", "1+q16t11", "1+q18t13")),
        (-1, "q10t6", ("1-q4t2", "1+q8t5", "1+q16t11", "1+q18t13", "1+q2t2+q4t4")),
        (-1, "q22t15", ("1-q4t2", "1-q6t4", "1+q8t5", "1+q18t13", "1+q2t2")),
        (1, "q26t18", ("1-q4t2", "1+q8t5", "1+q10t7", "1+q6t5")),
    ],
    7: [
        (1, "1", ("prod(1,4)",)),
        (-1, "q8t4", ("prod(1,4)",)),
        (-1, "q10t6", ("1-q4t2", "1+q8t5", "1+q2t2+q4t4+q6t6", "prod(2,4)")),
        (-1, "q22t15", ("1-q4t2", "1-q6t4", "1+q8t5", "1+q18t13", "1+q20t15", "1+q2t2+q4t4")),
        (1, "q26t18", ("1-q4t2", "1+q8t5", "1+q10t7", "1+q2t2", "1+q20t15", "1+q6t5")),
        (1, "q30t22", ("1-q4t2", "1-q6t4", "1+q8t5", "1+q10t7", "1+q12t9")),
    ],
}

_MONO = re.compile(r"([+-]?)(\d*)(?:q(\d+))?(?:t(\d*))?")
_PROD = re.compile(r"prod\((\d+),(\d+)\)")


def parse_poly(text: str) -> Dict[Tuple[int, int], int]:
    """``"1+q2t2-3q4t"`` -> ``{(0,0): 1, (2,2): 1, (4,1): -3}``."""
    out: Dict[Tuple[int, int], int] = {}
    for tok in re.findall(r"[+-]?[^+-]+", text.replace(" ", "")):
        m = _MONO.fullmatch(tok)
        if not m or tok in ("+", "-"):
            raise ValueError(f"cannot parse {tok!r} in {text!r}")
        sign, coeff, q, t = m.groups()
        if q is None and t is None and not coeff:
            raise ValueError(f"cannot parse {tok!r} in {text!r}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        key = (int(q or 0), (int(t) if t else 1) if t is not None else 0)
        out[key] = out.get(key, 0) + c
    return out


def _factor(text: str, reduced: bool, cutoff: int) -> MultiSeries:
    m = _PROD.fullmatch(text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        q0, t0 = (12, 7) if reduced else (6, 1)
        s = MultiSeries.one(cutoff)
        for i in range(lo, hi + 1):
            s = s.times_binomial(2 * i + q0, 2 * i + t0)
        return s
    return MultiSeries({(0, q, t): c for (q, t), c in parse_poly(text).items()}, cutoff)


def appendix_numerator(n: int, variant: str, cutoff: int) -> MultiSeries:
    """The stored polynomial expression, expanded."""
    table = _table(n, variant)
    reduced = variant == "reduced"
    total = MultiSeries.zero(cutoff)
    for sign, prefix, factors in table[n]:
        term = _factor(prefix, reduced, cutoff).scale(sign)
        for f in factors:
            term = term * _factor(f, reduced, cutoff)
        total = total + term
    return total


def _table(n: int, variant: str) -> Dict[int, List[Term]]:
    if variant not in ("unreduced", "reduced"):
        raise ValueError(f"variant must be 'unreduced' or 'reduced', not {variant!r}")
    table = UNREDUCED if variant == "unreduced" else REDUCED
    if n not in table:
        raise ValueError(f"no tabulated {variant} series for n={n} (have {min(table)}..{max(table)})")
    return table


def appendix_series(n: int, variant: str, cutoff: int) -> MultiSeries:
    """Tabulated Poincare series for ``2 <= n <= 7`` (unreduced) or ``3 <= n <= 7`` (reduced)."""
    num = appendix_numerator(n, variant, cutoff)
    if variant == "unreduced":
        for i in range(1, n + 1):
            num = num * geometric_inverse(2 * i, 2 * i - 2, 0, 1, cutoff)
        return num
    num = num.times_binomial(6, 3)
    for i in range(1, n):
        num = num * geometric_inverse(2 * i + 2, 2 * i, 0, 1, cutoff)
    return num
