import cmath
from itertools import permutations, product
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delsarte.exact_arith import (
    CyclotomicInt,
    ExactArithmeticError,
    PrimeField,
    adjugate,
    cyc_add,
    cyc_conj,
    cyc_mul,
    cyclotomic_poly,
    det,
    euler_phi,
    factorize,
    find_primitive_root,
    identity,
    is_prime,
    kernel_mod,
    matmul,
    rank,
    smith,
    smith_normal_form,
    units,
)


def leibniz_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inversions * prod(M[i][p[i]] for i in range(n))
    return total


def square(n, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def rect(max_rows=4, max_cols=4, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


# -- determinants and ranks ----------------------------------------------------


def test_det_examples():
    assert det([]) == 1
    assert det([[7]]) == 7
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[0, 1, 1, 3], [1, 1, 3, 0], [1, 3, 0, 1], [3, 0, 1, 1]]) == 75
    assert det([[5, 0, 0, 0], [5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0]]) == 0


def test_det_rejects_non_square():
    with pytest.raises(ExactArithmeticError):
        det([[1, 2, 3], [4, 5, 6]])


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_leibniz(M):
    assert det(M) == leibniz_det(M)


@given(st.integers(1, 5).flatmap(square))
def test_adjugate_identity(M):
    n = len(M)
    assert matmul(M, adjugate(M)) == identity(n, det(M))
    assert matmul(adjugate(M), M) == identity(n, det(M))


@given(rect(5, 5, -4, 4))
def test_rank_matches_numpy(M):
    assert rank(M) == np.linalg.matrix_rank(np.array(M, dtype=float))


def test_rank_of_outer_product_is_one():
    u, v = [1, -2, 3], [4, 0, -1, 2]
    assert rank([[a * b for b in v] for a in u]) == 1
    assert rank([[0, 0], [0, 0]]) == 0


# -- number theory ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 200))
def test_factorize_and_phi(n):
    f = factorize(n)
    assert prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)
    assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert is_prime(n) == (n > 1 and all(n % d for d in range(2, n)))


def test_units():
    assert units(15) == [1, 2, 4, 7, 8, 11, 13, 14]
    assert units(1) == [0]


# -- Smith normal form -------------------------------------------------------------


@settings(max_examples=200)
@given(rect())
def test_smith_decomposition(M):
    S = smith(M)
    r, c = len(M), len(M[0])
    D = matmul(matmul(S.U, M), S.V)
    for i in range(r):
        for j in range(c):
            expected = S.diagonal[i] if i == j and i < len(S.diagonal) else 0
            assert D[i][j] == expected
    assert matmul(S.V, S.V_inv) == identity(c)
    assert abs(det(S.U)) == 1 and abs(det(S.V)) == 1
    nonzero = [d for d in S.diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert len(nonzero) == rank(M)


def brute_row_span(M, m):
    span = {tuple([0] * len(M[0]))}
    for coeffs in product(range(m), repeat=len(M)):
        span.add(tuple(sum(c * row[j] for c, row in zip(coeffs, M)) % m for j in range(len(M[0]))))
    return span


def brute_kernel(M, m, ncols):
    return {
        g for g in product(range(m), repeat=ncols)
        if all(sum(a * b for a, b in zip(row, g)) % m == 0 for row in M)
    }


@settings(max_examples=150, deadline=None)
@given(rect(3, 3, -12, 12), st.integers(2, 12))
def test_span_and_kernel_mod_m(M, m):
    span = smith_normal_form(M, m)
    assert set(span.elements()) == brute_row_span(M, m)
    assert span.size == len(brute_row_span(M, m))
    ker = kernel_mod(M, m, len(M[0]))
    assert set(ker.elements()) == brute_kernel(M, m, len(M[0]))
    # annihilator duality: |span| * |kernel| = m^n
    assert span.size * ker.size == m ** len(M[0])


# -- cyclotomic integers -------------------------------------------------------------


def numeric(x: CyclotomicInt) -> complex:
    z = cmath.exp(2j * cmath.pi / x.m)
    return sum(c * z**k for k, c in enumerate(x.coeffs))


def test_cyclotomic_poly_examples():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


@pytest.mark.parametrize("m", range(1, 40))
def test_cyclotomic_poly_roots(m):
    phi = cyclotomic_poly(m)
    assert len(phi) - 1 == euler_phi(m)
    for k in units(m) if m > 1 else [0]:
        z = cmath.exp(2j * cmath.pi * k / m)
        assert abs(sum(c * z**i for i, c in enumerate(phi))) < 1e-8


def cyc(m):
    return st.lists(st.integers(-20, 20), min_size=m, max_size=m).map(lambda c: CyclotomicInt(m, tuple(c)))


@given(st.sampled_from([3, 5, 12, 15]).flatmap(lambda m: st.tuples(cyc(m), cyc(m), cyc(m))))
def test_cyclotomic_ring_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == CyclotomicInt.integer(x.m, 0)
    assert cyc_add(x, y) == x + y and cyc_mul(x, y) == x * y
    assert abs(numeric(x * y) - numeric(x) * numeric(y)) < 1e-6 * (1 + abs(numeric(x) * numeric(y)))


@given(st.sampled_from([5, 15, 20]).flatmap(lambda m: st.tuples(st.just(m), cyc(m))))
def test_conj_composition(mx):
    m, x = mx
    for k in units(m):
        for l in units(m):
            assert cyc_conj(cyc_conj(x, k), l) == cyc_conj(x, k * l)
    assert cyc_conj(x, 1) == x


def test_conj_requires_unit():
    with pytest.raises(ExactArithmeticError):
        CyclotomicInt.zeta_power(15, 1).conj(3)


def test_reduction_modulo_cyclotomic_polynomial():
    # 1 + zeta + ... + zeta^4 = 0 for a primitive 5th root
    total = CyclotomicInt.integer(5, 0)
    for k in range(5):
        total = total + CyclotomicInt.zeta_power(5, k)
    assert total.is_zero()
    assert total.as_rational_integer() == 0
    assert CyclotomicInt.zeta_power(5).as_rational_integer() is None
    z = CyclotomicInt.zeta_power(15)
    assert (z * z.conj(-1)).as_rational_integer() == 1


# -- prime fields ------------------------------------------------------------------------


def test_primitive_roots():
    assert find_primitive_root(7) == 3
    assert find_primitive_root(31) == 3
    assert find_primitive_root(2) == 1


@pytest.mark.parametrize("q", [2, 3, 7, 11, 31, 61, 101])
def test_discrete_log_table(q):
    F = PrimeField(q)
    assert sorted(F.exp[: q - 1]) == list(range(1, q))
    for x in range(1, q):
        assert pow(F.g, F.log(x), q) == x
        assert 0 <= F.log(x) < q - 1
