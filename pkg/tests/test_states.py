import pytest

from khalg import series as S
from khalg.series import MultiSeries
from khalg.states import (admissible_words, is_admissible, max_mu_degree, normal_form_monomials,
                          presentation_hilbert, state_sum, word_weight)


def test_counts():
    counts = [sum(1 for _ in admissible_words(n)) for n in range(1, 13)]
    assert counts == [2, 4, 8, 14, 26, 48, 88, 162, 298, 548, 1008, 1854]


def test_n4_forbidden_words():
    bad = {w for w in __import__("itertools").product((0, 1), repeat=4) if not is_admissible(w)}
    assert bad == {(1, 1, 1, 1), (0, 1, 1, 1)}


def test_n3_state_sum():
    expect = {(0, 0): 1, (2, 0): 1, (4, 2): 1, (6, 4): 1, (8, 3): 1, (8, 4): 1, (10, 5): 1, (12, 5): 1}
    s = state_sum(3)
    assert s.terms == {(0, q, t): c for (q, t), c in expect.items()}


def test_block_weights():
    assert word_weight((1, 1, 1, 0)) == (12, 5)
    assert word_weight((0, 0, 1)) == (6, 4)
    assert word_weight((0, 1, 1)) == (10, 5)
    assert word_weight((1, 0, 1, 1)) == (2 + 12, 0 + 7)


@pytest.mark.parametrize("n", range(1, 13))
def test_three_models_agree(n):
    a = state_sum(n)
    assert a == S.fermionic_recursive(n, a.q_cutoff)
    assert a == presentation_hilbert(n)


def test_presentation_n2_low_degree():
    # the finite model drops x_{n-1}^2, which P_n keeps; they agree below that degree
    assert presentation_hilbert(2).truncate(6) == S.bosonic_full(2, 6)
    assert presentation_hilbert(2).terms == {(0, 0, 0): 1, (0, 2, 0): 1, (0, 4, 2): 1, (0, 8, 3): 1}
    assert S.bosonic_full(2, 8).coefficient(8, 4) == 1


def test_level_bound():
    for n in range(1, 13):
        assert max_mu_degree(n) == (n + 1) // 3


def test_normal_forms_avoid_eliminated_products():
    for mono in normal_form_monomials(6):
        xs = sorted(i for k, i in mono if k == "x")
        mus = sorted(i for k, i in mono if k == "mu")
        assert all(b - a >= 2 for a, b in zip(xs, xs[1:]))
        assert all(b - a >= 3 for a, b in zip(mus, mus[1:]))


def test_rejects_bad_n():
    with pytest.raises(ValueError):
        state_sum(0)
    with pytest.raises(ValueError):
        presentation_hilbert(0)
