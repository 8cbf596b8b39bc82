"""Independent reference computations built on sympy.

Nothing here imports the library's expansion code: rational functions are
expanded with sympy polynomial arithmetic, ranks and Smith forms come from
sympy matrices or from determinantal divisors.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import gcd
from pathlib import Path

import sympy as sp

q, t, a = sp.symbols("q t a")
DATA = Path(__file__).parent / "data"


def truncate(expr, cutoff: int) -> dict:
    """``{(a, q, t): coeff}`` of a polynomial, keeping q-degree <= cutoff."""
    poly = sp.Poly(sp.expand(expr), a, q, t)
    return {k: int(c) for k, c in poly.terms() if k[1] <= cutoff and c != 0}


def geometric(m, cutoff: int, qdeg: int):
    """Truncated 1/(1 - m) where m has q-degree ``qdeg`` >= 1."""
    return sum(m ** k for k in range(cutoff // qdeg + 1))


def expand_rational(num, dens, cutoff: int) -> dict:
    """Expand num / prod(1 - m) for ``dens = [(m, qdeg), ...]``."""
    expr = sp.expand(num)
    for m, d in dens:
        expr = sp.expand(expr * geometric(m, cutoff, d))
        expr = sp.Add(*[trm for trm in expr.as_ordered_terms() if sp.degree(trm, q) <= cutoff])
    return truncate(expr, cutoff)


def to_sympy(terms: dict):
    return sum(c * a ** k[0] * q ** k[1] * t ** k[2] for k, c in terms.items())


def satisfies(series_terms: dict, num, den, cutoff: int) -> bool:
    """True iff den * series == num through q^cutoff (den has constant term 1)."""
    lhs = truncate(sp.expand(den * to_sympy(series_terms)), cutoff)
    return lhs == truncate(num, cutoff)


def gaussian_binomial_by_counting(m: int, l: int) -> dict:
    """(m choose l)_z via lattice paths: z-weight = number of inversions."""
    if l < 0 or l > m or m < 0:
        return {}
    out: dict = {}
    for ones in combinations(range(m), l):
        word = [1 if i in ones else 0 for i in range(m)]
        inv = sum(1 for i in range(m) for j in range(i + 1, m) if word[i] > word[j])
        out[inv] = out.get(inv, 0) + 1
    return out


def sympy_rank(dense) -> int:
    return sp.Matrix(dense).rank() if dense and dense[0] else 0


def determinantal_divisors(dense) -> list:
    """Elementary divisors from gcds of k x k minors (tiny matrices only)."""
    m = sp.Matrix(dense)
    r, c = m.shape
    ds = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, int(m.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


# closed forms stated explicitly for small cases ------------------------------

def closed_forms(cutoff: int = 24) -> dict:
    z = q ** 2 * t ** 2
    out = {}
    out["P2"] = expand_rational(1 + q ** 8 * t ** 3 + q ** 2 * (1 - q ** 4 * t ** 2),
                                [(q ** 4 * t ** 2, 4)], cutoff)
    out["P3"] = expand_rational((1 + q ** 10 * t ** 5) * (1 + q ** 2 + q ** 4 * t ** 2)
                                + q ** 8 * t ** 3 * (1 - q ** 6 * t ** 4), [(q ** 6 * t ** 4, 6)], cutoff)
    out["Pbar2"] = expand_rational(1 + q ** 6 * t ** 3, [(q ** 4 * t ** 2, 4)], cutoff)
    out["Pbar3"] = expand_rational(1 + q ** 4 * t ** 2 + q ** 6 * t ** 3 + q ** 10 * t ** 5,
                                   [(q ** 6 * t ** 4, 6)], cutoff)
    out["Pbar4"] = expand_rational(
        (1 + q ** 6 * t ** 3) * ((1 + q ** 4 * t ** 2) * (1 - q ** 6 * t ** 4) + q ** 6 * t ** 4 * (1 + q ** 8 * t ** 5)),
        [(q ** 8 * t ** 6, 8), (q ** 6 * t ** 4, 6)], cutoff)
    for n in range(1, 6):
        num = sp.prod([1 + q ** (2 * i + 4) * t ** (2 * i + 1) for i in range(n)])
        num *= sp.prod([1 - q ** (4 * i + 4) * t ** (4 * i) for i in range((n - 1) // 2 + 1)])
        dens = [(q ** (2 * i + 2) * t ** (2 * i), 2 * i + 2) for i in range(n)]
        dens += [(-q ** (4 * i + 4) * t ** (4 * i + 1), 4 * i + 4) for i in range((n - 1) // 2 + 1)]
        out[f"Z2_{n}"] = expand_rational(num, dens, cutoff)
    # Rogers-Ramanujan type left side, p-sum over fermionic terms
    left = 0
    p = 0
    while 2 * p * p <= 40:
        term = q ** (2 * p * p) * t ** (2 * p * (p - 1))
        left += sp.expand(term * sp.prod([geometric(q ** (2 * k) * t ** (2 * k), 40, 2 * k) for k in range(1, p + 1)]))
        p += 1
    out["RR_left_40"] = truncate(left, 40)
    return out


def _encode(d: dict) -> list:
    return [[k[0], k[1], k[2], v] for k, v in sorted(d.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0]))]


def _decode(rows: list) -> dict:
    return {(r[0], r[1], r[2]): r[3] for r in rows}


def freeze(path: Path = DATA / "frozen_closed_forms.json") -> None:
    path.write_text(json.dumps({k: _encode(v) for k, v in closed_forms().items()}, indent=0) + "\n")


def load_frozen(path: Path = DATA / "frozen_closed_forms.json") -> dict:
    return {k: _decode(v) for k, v in json.loads(path.read_text()).items()}


if __name__ == "__main__":
    freeze()
