"""Property-based tests of algebraic invariants."""

from hypothesis import assume, given, strategies as st

import oracles
from khalg import series as S
from khalg import verify as V
from khalg.dga import DifferentialSpec, Element, GeneratorSpec, apply_differential, enumerate_basis, t_range
from khalg.linalg import Ring, SparseMatrix, rank_over_field, smith_normal_form
from khalg.series import MultiSeries

CUT = 12

terms = st.dictionaries(
    st.tuples(st.integers(0, 1), st.integers(0, CUT), st.integers(0, 6)),
    st.integers(-5, 5), max_size=8)
series = terms.map(lambda d: MultiSeries(d, CUT))


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * MultiSeries.one(CUT) == a
    assert a - a == MultiSeries.zero(CUT)


@given(st.integers(1, 6), st.integers(0, 4), st.sampled_from([1, -1]))
def test_geometric_inverse(qe, te, sign):
    inv = S.geometric_inverse(qe, te, 0, sign, 30)
    assert inv.times_binomial(qe, te, 0, -sign) == MultiSeries.one(30)


@given(series, st.integers(1, 6), st.integers(0, 3), st.sampled_from([1, -1]))
def test_divide_undoes_multiply(s, qe, te, sign):
    assert s.times_binomial(qe, te, 0, sign).divide_binomial(qe, te, 0, sign) == s


@given(st.integers(0, 9), st.integers(0, 9))
def test_z_binomial_symmetry_and_pascal(m, l):
    assume(l <= m)
    cut = 200
    assert S.z_binomial(m, l, cut) == S.z_binomial(m, m - l, cut)
    if 1 <= l < m:
        # (m, l) = (m-1, l-1) + z^l (m-1, l)
        rhs = S.z_binomial(m - 1, l - 1, cut) + S.z_binomial(m - 1, l, cut).shift(2 * l, 2 * l)
        assert S.z_binomial(m, l, cut) == rhs


qt_series = st.dictionaries(st.tuples(st.just(0), st.integers(0, CUT), st.integers(0, 6)),
                            st.integers(-5, 5), max_size=8).map(lambda d: MultiSeries(d, CUT))


@given(qt_series)
def test_t_minus_one_is_ring_map(s):
    sq = s * s
    assert S.eval_t_minus1(sq) == S.eval_t_minus1(s) * S.eval_t_minus1(s)


@given(series)
def test_json_round_trip(s):
    assert MultiSeries.from_json(s.to_json()) == s


# ---------------------------------------------------------------------------
# the complex

N = 4


@st.composite
def homogeneous(draw, reduced=False):
    spec = GeneratorSpec(N, reduced)
    q = draw(st.integers(0, 11).map(lambda k: 2 * k))
    ts = [t for t in t_range(spec, q) if enumerate_basis(spec, (q, t))]
    assume(ts)
    t = draw(st.sampled_from(ts))
    basis = enumerate_basis(spec, (q, t))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(basis), max_size=len(basis)))
    return Element({m: c for m, c in zip(basis, coeffs) if c}, Ring.QQ())


diffs = st.sampled_from([DifferentialSpec.standard(), DifferentialSpec.lee(), DifferentialSpec.generic(42)])


@given(homogeneous(), diffs)
def test_square_zero(e, diff):
    spec = GeneratorSpec(N)
    d = apply_differential(spec, diff, e)
    if d:
        assert apply_differential(spec, diff, d) == 0


@given(homogeneous(reduced=True))
def test_square_zero_reduced(e):
    spec = GeneratorSpec(N, True)
    d = apply_differential(spec, DifferentialSpec.standard(), e)
    if d:
        assert apply_differential(spec, DifferentialSpec.standard(), d) == 0


@given(homogeneous(), homogeneous(), diffs)
def test_leibniz(a, b, diff):
    spec = GeneratorSpec(N)
    assume(a and b)
    ab = a * b
    assume(ab)
    zero = Element({}, Ring.QQ())
    da, db = apply_differential(spec, diff, a), apply_differential(spec, diff, b)
    # the parity of t is the parity of the number of odd generators
    sign = (-1) ** (a.bidegree[1] % 2)
    rhs = (da * b if da else zero) + ((a * db).scale(sign) if db else zero)
    assert apply_differential(spec, diff, ab) == rhs


@given(homogeneous())
def test_degree_identity(e):
    assume(e)
    q, t = e.bidegree
    for m in e.terms:
        assert q - t == 2 * m.x_total + 3 * len(m.xi_set)


@given(homogeneous())
def test_anticommute(e):
    spec = GeneratorSpec(N)
    d1, d2 = DifferentialSpec.lee(), DifferentialSpec.standard()
    x = apply_differential(spec, d1, e)
    y = apply_differential(spec, d2, e)
    a = apply_differential(spec, d2, x) if x else Element({}, Ring.QQ())
    b = apply_differential(spec, d1, y) if y else Element({}, Ring.QQ())
    assert a + b == 0


# ---------------------------------------------------------------------------
# linear algebra

small = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=3)


@given(small)
def test_snf_against_minors(dense):
    res = smith_normal_form(SparseMatrix.from_dense(dense))
    divs = list(res.elementary_divisors)
    assert divs == oracles.determinantal_divisors(dense)
    assert all(divs[i + 1] % divs[i] == 0 for i in range(len(divs) - 1))
    assert res.rank == oracles.sympy_rank(dense)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=1, max_size=5))
def test_rank_against_sympy(dense):
    m = SparseMatrix.from_dense(dense)
    assert rank_over_field(m, Ring.QQ()) == oracles.sympy_rank(dense)
    for p in (2, 3, 7):
        assert rank_over_field(m, Ring.GF(p)) <= rank_over_field(m, Ring.QQ())


@given(small)
def test_snf_product_is_gcd_of_maximal_minors(dense):
    res = smith_normal_form(SparseMatrix.from_dense(dense))
    prod = 1
    for d in res.elementary_divisors:
        prod *= d
    divs = oracles.determinantal_divisors(dense)
    expect = 1
    for d in divs:
        expect *= d
    assert prod == expect


# ---------------------------------------------------------------------------
# epsilon


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_epsilon_triple(a, b, c):
    assert V.epsilon(a, b + c) + V.epsilon(b, a + c) + V.epsilon(c, a + b) == 0


@given(st.integers(0, 30), st.integers(0, 30))
def test_epsilon_pair_sum(a, b):
    assert V.epsilon(a, b) + V.epsilon(b, a) == a + b
