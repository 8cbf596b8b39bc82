import json
from fractions import Fraction

import pytest

from khalg import verify as V
from khalg.dga import DifferentialSpec, Element, GeneratorSpec, apply_differential
from khalg.linalg import Ring
from khalg.series import MultiSeries

STD = DifferentialSpec.standard()


def test_epsilon():
    assert V.epsilon(0, 1) == -1 and V.epsilon(1, 0) == 2
    with pytest.raises(ValueError):
        V.epsilon(-1, 0)


def test_mu_small():
    n = 3
    mu0 = V.mu_cycle(GeneratorSpec(n), 0)
    x0, x1 = Element.x(n, 0), Element.x(n, 1)
    xi0, xi1 = Element.xi(n, 0), Element.xi(n, 1)
    assert mu0 == x1 * xi0 * 2 - x0 * xi1
    assert mu0.bidegree == (8, 3)
    with pytest.raises(ValueError):
        V.mu_cycle(GeneratorSpec(n), 2)
    with pytest.raises(ValueError):
        V.mu_cycle(GeneratorSpec(n, True), 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_mu_checks(n):
    for s in range(n - 1):
        assert V.mu_cycle_check(GeneratorSpec(n), s).passed


@pytest.mark.parametrize("kind", V.RELATION_KINDS)
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_relations_closed_form(kind, n):
    spec = GeneratorSpec(n)
    for j in V.relation_range(kind, n):
        rep = V.verify_relation_boundary(kind, spec, j)
        assert rep.passed and rep.params["method"] == "closed_form", rep.to_json()


@pytest.mark.parametrize("kind", ["xmu", "xddot_mu", "mu_mudot"])
def test_relation_above_range_is_not_boundary(kind):
    n = 5
    j = V.relation_range(kind, n).stop
    rel = V.relation_element(kind, GeneratorSpec(n), j)
    if rel:
        assert V.is_boundary(GeneratorSpec(n), STD, rel) is None


def test_is_boundary():
    n = 3
    spec = GeneratorSpec(n)
    x0 = Element.x(n, 0)
    pre = V.is_boundary(spec, STD, x0 * x0)
    assert pre is not None and apply_differential(spec, STD, pre) == x0 * x0
    assert V.is_boundary(spec, STD, x0) is None
    with pytest.raises(ValueError):
        V.is_boundary(spec, STD, (x0 * x0).to_ring(Ring.ZZ()))


def test_torsion_witness():
    m = V.torsion_witness(5)
    assert m.bidegree == (16, 11)
    assert V.torsion_witness_check(5).passed
    for bad in (2, 3, 9):
        with pytest.raises(ValueError):
            V.torsion_witness(bad)


@pytest.mark.parametrize("n", range(2, 7))
def test_lee(n):
    for s in range(n - 1):
        assert V.lee_identity_check(GeneratorSpec(n), s).passed


def test_chain_checks():
    for diff in (STD, DifferentialSpec.generic(3)):
        assert V.square_zero_check(GeneratorSpec(4), diff, 20).passed
        assert V.anticommutation_check(GeneratorSpec(4), 20, diff).passed
    assert V.square_zero_check(GeneratorSpec(4), DifferentialSpec.lee(), 20).passed


def test_potential_and_reduction():
    for n in range(1, 7):
        assert V.potential_identity_check(n).passed
    for n in range(3, 6):
        assert V.reduction_check(n, 20).passed
    with pytest.raises(ValueError):
        V.reduction_check(2)


def test_generic_contrast():
    rep = V.generic_contrast_check()
    assert rep.passed
    assert rep.witness["standard"] == {"shape": [10, 7], "rank": 6, "betti": 1}
    assert rep.witness["generic"]["rank"] == 7


def test_compare_tables_reports_difference():
    a = MultiSeries.monomial(4, 2, q_cutoff=10)
    b = MultiSeries.monomial(4, 1, q_cutoff=10)
    rep = V.compare_tables(a, b, 10)
    assert not rep.passed and rep.witness["q"] == 4
    assert V.compare_tables(a, a, 10).passed
    assert not V.compare_tables(a, a, 12).passed  # cutoff too small
    assert V.compare_tables(a, b, 10, t_max=0).passed


def test_identities():
    reps = V.identities_checks(40)
    assert all(r.passed for r in reps), [r.to_json() for r in reps if not r.passed]


def test_report_json():
    rep = V.mu_cycle_check(GeneratorSpec(3), 0)
    data = json.loads(rep.to_json())
    assert list(data) == ["check", "params", "verdict", "witness"]
    assert data["verdict"] == "pass"
