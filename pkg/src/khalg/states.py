"""Combinatorial models for the limit Poincare series.

Two independent enumerations of the same weighted set:

* binary words of length ``n`` with no ``1111`` anywhere and ``111`` only as
  a prefix, weighted block by block;
* monomials in ``x_i`` and odd ``mu_i`` that avoid the products eliminated by
  the quadratic relations (the normal-form basis).
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, List, Tuple

from .series import MultiSeries

__all__ = ["admissible_words", "word_weight", "state_sum", "presentation_hilbert",
           "normal_form_monomials"]


def _default_cutoff(n: int) -> int:
    # every block weight has q <= 2n + 8, and there are at most n blocks
    return n * (2 * n + 8) + 12


def _blocks(word: Tuple[int, ...]) -> List[Tuple[int, int]]:
    """Runs of ones as ``(start, length)``."""
    out = []
    i, n = 0, len(word)
    while i < n:
        if word[i]:
            j = i
            while j < n and word[j]:
                j += 1
            out.append((i, j - i))
            i = j
        else:
            i += 1
    return out


def is_admissible(word: Tuple[int, ...]) -> bool:
    for start, length in _blocks(word):
        if length >= 4 or (length == 3 and start != 0):
            return False
    return True


def admissible_words(n: int) -> Iterator[Tuple[int, ...]]:
    for word in product((0, 1), repeat=n):
        if is_admissible(word):
            yield word


def word_weight(word: Tuple[int, ...]) -> Tuple[int, int]:
    """Total (q, t) weight of an admissible word."""
    q = t = 0
    for start, length in _blocks(word):
        if length == 1:
            q, t = q + 2 * start + 2, t + 2 * start
        elif length == 2:
            q, t = q + 2 * start + 8, t + 2 * start + 3
        else:  # leading 111
            q, t = q + 12, t + 5
    return q, t


def state_sum(n: int, cutoff: int | None = None) -> MultiSeries:
    """Weighted count of admissible binary words of length ``n``.

    >>> state_sum(1)
    MultiSeries(1 + q^2; q<=22)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cutoff = _default_cutoff(n) if cutoff is None else cutoff
    terms: dict = {}
    for word in admissible_words(n):
        q, t = word_weight(word)
        terms[(0, q, t)] = terms.get((0, q, t), 0) + 1
    return MultiSeries(terms, cutoff)


def _conflicts(g: Tuple[str, int], h: Tuple[str, int]) -> bool:
    """True if the product of two normal-form generators is eliminated."""
    (kg, i), (kh, j) = g, h
    if kg == kh == "mu":
        return abs(i - j) <= 2
    if kg == kh == "x":
        return abs(i - j) <= 1
    if kg == "mu":
        i, j = j, i
    # x_i against mu_j; x_0 mu_1 is the leading 111 and survives
    if (i, j) == (0, 1):
        return False
    return j - 1 <= i <= j + 2


def normal_form_monomials(n: int) -> Iterator[List[Tuple[str, int]]]:
    """Monomials in ``x_0..x_{n-1}``, ``mu_0..mu_{n-2}`` avoiding eliminated products.

    Each generator appears at most once: ``x_i^2`` is eliminated and ``mu_i`` is odd.
    """
    gens = [("x", i) for i in range(n)] + [("mu", i) for i in range(n - 1)]
    gens.sort(key=lambda g: (g[1], g[0]))

    def extend(start: int, chosen: List[Tuple[str, int]]):
        yield list(chosen)
        for k in range(start, len(gens)):
            g = gens[k]
            if any(_conflicts(g, h) for h in chosen):
                continue
            chosen.append(g)
            yield from extend(k + 1, chosen)
            chosen.pop()

    yield from extend(0, [])


def presentation_hilbert(n: int, cutoff: int | None = None) -> MultiSeries:
    """Hilbert series of the normal-form monomial model on ``x_i`` and ``mu_i``.

    ``deg x_i = q^{2i+2} t^{2i}``, ``deg mu_i = q^{2i+8} t^{2i+3}``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cutoff = _default_cutoff(n) if cutoff is None else cutoff
    terms: dict = {}
    for mono in normal_form_monomials(n):
        q = t = 0
        for kind, i in mono:
            if kind == "x":
                q, t = q + 2 * i + 2, t + 2 * i
            else:
                q, t = q + 2 * i + 8, t + 2 * i + 3
        terms[(0, q, t)] = terms.get((0, q, t), 0) + 1
    return MultiSeries(terms, cutoff)


def max_mu_degree(n: int) -> int:
    """Largest number of ``mu`` factors in a surviving normal-form monomial."""
    return max(sum(1 for kind, _ in m if kind == "mu") for m in normal_form_monomials(n))
