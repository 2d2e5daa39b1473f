import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import MAXIMAL_QUINTIC
from delsarte.characters import Character, galois_orbit, generate_characters
from delsarte.delsarte import DelsarteSurface, parse_exponent_matrix
from delsarte.exact_arith import CyclotomicInt, units
from delsarte.zeta import (
    IntPolynomial,
    JacobiContext,
    ZetaError,
    count_points,
    format_factored,
    jacobi_sum,
    ns_local_factor,
    split_ns_factor,
    strip_linear_factor,
    transcendental_euler_factor,
    verify_resolution_trace,
    weil_charpoly,
    zeta_local,
)

from oracles import count_points_loop, cyclotomic_value, jacobi_sum_complex

MAXIMAL_QUINTIC_FACTOR_31 = (1, -8, 3868, -23096, 5587270, -22195256, 3572179228, -7100029448, 852891037441)


@pytest.mark.parametrize("m, q", [(3, 7), (4, 13), (5, 11)])
def test_jacobi_sums_match_triple_loop(m, q):
    ctx = JacobiContext.create(q, m)
    for alpha in generate_characters(m):
        assert abs(cyclotomic_value(jacobi_sum(ctx, alpha)) - jacobi_sum_complex(q, m, alpha.a)) < 1e-6


def test_jacobi_sums_match_triple_loop_at_31():
    ctx = JacobiContext.create(31, 15)
    for alpha in [Character(15, (1, 2, 4, 8)), Character(15, (7, 14, 13, 11)), Character(15, (1, 1, 1, 12))]:
        assert abs(cyclotomic_value(jacobi_sum(ctx, alpha)) - jacobi_sum_complex(31, 15, alpha.a)) < 1e-6


@pytest.mark.parametrize("m, q", [(3, 7), (4, 13), (5, 11), (5, 31), (6, 7)])
def test_jacobi_norms(m, q):
    ctx = JacobiContext.create(q, m)
    for alpha in generate_characters(m):
        j = jacobi_sum(ctx, alpha)
        assert (j * j.conj(-1)).as_rational_integer() == q * q


def test_galois_equivariance_on_maximal_quintic_orbit():
    ctx = JacobiContext.create(31, 15)
    alpha = Character(15, (1, 2, 4, 8))
    j = jacobi_sum(ctx, alpha)
    for k in units(15):
        assert j.conj(k) == jacobi_sum(ctx, alpha.scale(k))


def test_context_validation():
    with pytest.raises(ZetaError):
        JacobiContext.create(30, 15)
    with pytest.raises(ZetaError):
        JacobiContext.create(29, 15)
    with pytest.raises(ZetaError):
        jacobi_sum(JacobiContext.create(11, 5), Character(15, (1, 2, 4, 8)))


@pytest.mark.parametrize("m, q", [(3, 7), (5, 11)])
def test_weil_charpoly_trace(m, q):
    P = weil_charpoly(m, q)
    assert P.degree == m**3 - 4 * m**2 + 6 * m - 2
    assert P.coeffs[-1] == 1
    trace = -P.coeffs[-2]
    assert 1 + q * q + trace == count_points(m, q)


@pytest.mark.parametrize(
    "rows, q",
    [
        (3, 7),
        (5, 11),
        (((0, 1, 1, 3), (1, 1, 3, 0), (1, 3, 0, 1), (3, 0, 1, 1)), 7),
        (((0, 1, 1, 3), (1, 1, 3, 0), (1, 3, 0, 1), (3, 0, 1, 1)), 11),
        (((1, 4, 0, 0), (0, 1, 4, 0), (4, 0, 1, 0), (0, 0, 0, 5)), 5),
        (((2, 1, 0, 0), (0, 2, 1, 0), (0, 0, 2, 1), (1, 0, 0, 2)), 3),
    ],
)
def test_point_counter_matches_loop(rows, q):
    if isinstance(rows, int):
        full = [[rows if i == j else 0 for j in range(4)] for i in range(4)]
    else:
        full = rows
    assert count_points(rows, q) == count_points_loop(full, q)


def test_point_counter_rejects_composite():
    with pytest.raises(ZetaError):
        count_points(5, 9)


def test_maximal_quintic_euler_factor():
    f = transcendental_euler_factor(parse_exponent_matrix(MAXIMAL_QUINTIC), 31)
    assert f.coeffs == MAXIMAL_QUINTIC_FACTOR_31
    assert str(f).startswith("1 - 8*T + 3868*T^2")
    # functional equation of a weight-2 factor: c_(8-i) = q^(8-2i) c_i
    assert all(f.coeffs[8 - i] == 31 ** (8 - 2 * i) * f.coeffs[i] for i in range(5))


@pytest.mark.parametrize("q", [61, 151])
def test_maximal_quintic_euler_factor_other_primes(q):
    f = transcendental_euler_factor(parse_exponent_matrix(MAXIMAL_QUINTIC), q)
    assert f.degree == 8 and f.coeffs[0] == 1
    assert all(f.coeffs[8 - i] == q ** (8 - 2 * i) * f.coeffs[i] for i in range(5))


@pytest.mark.parametrize("q", [2, 7, 11, 29, 31, 61])
def test_ns_factor_degree_and_split_part(q):
    ns = ns_local_factor(q)
    assert ns.degree == 45
    assert ns.coeffs[0] == 1
    k, rest = strip_linear_factor(ns, q)
    assert k + rest.degree == 45


def test_ns_factor_examples():
    lin = lambda c: IntPolynomial((1, -c))  # noqa: E731
    assert ns_local_factor(31) == split_ns_factor(45, 31) == lin(31) ** 45
    assert ns_local_factor(11) == lin(11) ** 39 * IntPolynomial((1, 0, -121)) * lin(11) ** 4
    assert ns_local_factor(2) == lin(2) ** 39 * IntPolynomial((1, 0, -4)) * IntPolynomial((1, 0, 0, 0, -16))
    assert format_factored(ns_local_factor(31), 31) == "(1 - 31*T)^45"
    assert format_factored(ns_local_factor(11), 11) == "(1 - 11*T)^44 * (1 + 11*T)"


@pytest.mark.parametrize("q", [3, 5, 1, 15])
def test_ns_factor_rejects(q):
    with pytest.raises(ZetaError):
        ns_local_factor(q)


@given(st.integers(0, 6), st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.sampled_from([2, 3, 7, 31]))
def test_strip_linear_factor_round_trip(k, rest, q):
    r = IntPolynomial(tuple([1] + rest))
    if r(0) == 0 or sum(c * q ** (len(r.coeffs) - 1 - i) for i, c in enumerate(r.coeffs)) == 0:
        return  # rest vanishes at 1/q
    got_k, got_rest = strip_linear_factor(IntPolynomial((1, -q)) ** k * r, q)
    assert (got_k, got_rest) == (k, r)


def test_zeta_local_maximal_quintic():
    z = zeta_local(parse_exponent_matrix(MAXIMAL_QUINTIC), 31)
    assert z.ns == split_ns_factor(45, 31)
    assert z.transcendental.coeffs == MAXIMAL_QUINTIC_FACTOR_31
    assert z.denominator.degree == 55
    assert z.numerator == IntPolynomial.one()
    # first coefficient of log Z is the point count of the resolved surface
    rep = verify_resolution_trace(parse_exponent_matrix(MAXIMAL_QUINTIC), 31)
    assert -z.denominator.coeffs[1] == rep.cohomological == rep.geometric == 2365
    assert rep.point_count == 1249


def test_zeta_local_other_surface_uses_split_factor():
    z = zeta_local(parse_exponent_matrix("x^5+y^5+z^5+w^5"), 11)
    assert z.ns == split_ns_factor(37, 11)
    assert z.transcendental.degree == 16


@pytest.mark.parametrize(
    "text, q",
    [(MAXIMAL_QUINTIC, 30), (MAXIMAL_QUINTIC, 29), ("x^3y^2+y^5+z^5+w^5", 31)],
)
def test_zeta_local_errors(text, q):
    with pytest.raises(ZetaError):
        zeta_local(parse_exponent_matrix(text), q)


@pytest.mark.parametrize("q", [61, 151])
def test_resolution_trace_other_primes(q):
    assert verify_resolution_trace(parse_exponent_matrix(MAXIMAL_QUINTIC), q).equal


@pytest.mark.parametrize("q", [11, 31, 41])
def test_smooth_fermat_trace_needs_no_correction(q):
    rep = verify_resolution_trace(DelsarteSurface.from_rows([[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]]), q, 0)
    assert rep.equal


def test_wrong_exceptional_count_is_reported_not_raised():
    rep = verify_resolution_trace(parse_exponent_matrix(MAXIMAL_QUINTIC), 31, 35)
    assert not rep.equal and rep.geometric == rep.cohomological - 31


def test_cyclotomic_trace_is_rational():
    ctx = JacobiContext.create(31, 15)
    total = CyclotomicInt.integer(15, 0)
    for a in galois_orbit(Character(15, (1, 2, 4, 8))).members:
        total = total + jacobi_sum(ctx, a)
    assert total.as_rational_integer() == 8
