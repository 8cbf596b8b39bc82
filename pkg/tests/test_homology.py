import json

import pytest

import oracles
from khalg import series as S
from khalg.dga import DifferentialSpec, GeneratorSpec
from khalg.homology import (HomologyTable, chain_euler, euler_column, homology_at, homology_table,
                            incoming_rank, torsion_at)
from khalg.linalg import Ring

STD = DifferentialSpec.standard()
QQ, ZZ, F2 = Ring.QQ(), Ring.ZZ(), Ring.GF(2)
FROZEN = oracles.load_frozen()


def _terms(tab):
    return {(0, q, t): e.betti for (q, t), e in tab.entries.items() if e.betti}


@pytest.mark.parametrize("n", [2, 3])
def test_matches_frozen_closed_form(n):
    assert _terms(homology_table(GeneratorSpec(n), STD, QQ, 24)) == FROZEN[f"P{n}"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_matches_frozen(n):
    assert _terms(homology_table(GeneratorSpec(n, True), STD, QQ, 24)) == FROZEN[f"Pbar{n}"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_z2_matches_frozen(n):
    assert _terms(homology_table(GeneratorSpec(n), STD, F2, 24)) == FROZEN[f"Z2_{n}"]


def test_small_entries():
    tab = homology_table(GeneratorSpec(2), STD, QQ, 10)
    assert tab.betti(0, 0) == 1 and tab.betti(2, 0) == 1
    assert tab.betti(4, 0) == 0  # x0^2 is hit by xi0
    assert tab.betti(8, 3) == 1
    with pytest.raises(KeyError):
        tab.betti(12, 0)


def test_torsion_at():
    assert any(d % 5 == 0 for d in torsion_at(GeneratorSpec(5), (16, 10)))
    assert torsion_at(GeneratorSpec(5), (16, 10)) == [2, 10]
    assert torsion_at(GeneratorSpec(2), (4, 0)) == []


def test_integral_table_carries_torsion():
    tab = homology_table(GeneratorSpec(5), STD, ZZ, 16)
    assert tab.torsion(16, 10) == (2, 10)
    # free part agrees with the rational table
    assert _terms(tab) == _terms(homology_table(GeneratorSpec(5), STD, QQ, 16))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_universal_coefficients(p):
    """dim H(F_p) = betti + #(divisors at deg divisible by p) + #(divisors at t-1 divisible by p)."""
    spec = GeneratorSpec(5)
    zt = homology_table(spec, STD, ZZ, 20)
    ft = homology_table(spec, STD, Ring.GF(p), 20)
    for q in range(0, 21, 2):
        for t in range(0, q + 1):
            tor_here = sum(1 for d in zt.torsion(q, t) if d % p == 0)
            tor_below = sum(1 for d in zt.torsion(q, t - 1) if d % p == 0) if t >= 1 else 0
            assert ft.betti(q, t) == zt.betti(q, t) + tor_here + tor_below, (q, t)


def test_rank_mod_p_bounded_by_rational():
    spec = GeneratorSpec(5)
    for q in range(0, 21, 2):
        for t in range(0, q + 1):
            assert incoming_rank(spec, STD, (q, t), F2) <= incoming_rank(spec, STD, (q, t), QQ)


def test_euler_column():
    tab = homology_table(GeneratorSpec(2), STD, QQ, 10)
    assert euler_column(tab, 0) == 1
    assert euler_column(tab, 2) == 1
    assert euler_column(tab, 6) == 0
    with pytest.raises(ValueError):
        euler_column(tab, 12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_euler_column_matches_chain(n):
    spec = GeneratorSpec(n)
    tab = homology_table(spec, STD, QQ, 20)
    for q in range(0, 21, 2):
        assert euler_column(tab, q) == chain_euler(spec, q)


def test_json_round_trip():
    tab = homology_table(GeneratorSpec(3), STD, ZZ, 14)
    data = json.loads(tab.to_json())
    assert set(data) == {"n", "reduced", "ring", "diff", "q_max", "entries"}
    assert data["ring"] == "int" and data["diff"] == "standard"
    for e in data["entries"]:
        assert set(e) == {"q", "t", "betti", "torsion"}
    back = HomologyTable.from_dict(data)
    assert back.entries == tab.entries and back.spec == tab.spec


def test_grid_and_poincare():
    tab = homology_table(GeneratorSpec(2), STD, QQ, 8)
    assert "q\\t" in tab.grid()
    assert tab.poincare_series() == S.bosonic_full(2, 8)


def test_negative_qmax():
    with pytest.raises(ValueError):
        homology_table(GeneratorSpec(2), STD, QQ, -2)


def test_generic_kills_class():
    spec = GeneratorSpec(7)
    assert homology_at(spec, STD, QQ, (18, 13)).betti == 1
    assert homology_at(spec, DifferentialSpec.generic(42), QQ, (18, 13)).betti == 0
