"""Exact integer, integer-matrix, cyclotomic and prime-field arithmetic.

Everything here works with Python ints; nothing is ever rounded.  Matrices
are plain lists of lists (row major) and are never mutated in place by the
public functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


class ExactArithmeticError(ValueError):
    """Raised on malformed input to an exact-arithmetic routine."""


def _check_square(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ExactArithmeticError(f"matrix is not square ({n} rows, row of length {len(row)})")
    return n


def identity(n: int, scale: int = 1) -> Matrix:
    return [[scale if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _check_square(M)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def minor(M: Sequence[Sequence[int]], i: int, j: int) -> Matrix:
    return [list(row[:j]) + list(row[j + 1:]) for r, row in enumerate(M) if r != i]


def adjugate(M: Sequence[Sequence[int]]) -> Matrix:
    """Classical adjoint: ``M @ adjugate(M) == det(M) * I``."""
    n = _check_square(M)
    if n == 0:
        return []
    if n == 1:
        return [[1]]
    return [
        [(-1) ** (i + j) * det(minor(M, j, i)) for j in range(n)]
        for i in range(n)
    ]


def rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by fraction-free row reduction."""
    a = [list(map(int, row)) for row in M]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
                g = 0
                for x in a[i]:
                    g = gcd(g, x)
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        r += 1
        if r == rows:
            break
    return r


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|`` (desk-scale inputs only)."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def units(m: int) -> list[int]:
    """Residues k in [1, m) (or [0] when m == 1) with gcd(k, m) == 1."""
    if m == 1:
        return [0]
    return [k for k in range(1, m) if gcd(k, m) == 1]


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == diag`` with U, V unimodular; ``V_inv`` is the inverse of V."""

    diagonal: list[int]
    U: Matrix
    V: Matrix
    V_inv: Matrix


def smith(M: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form over Z, with both transforms and the inverse column transform."""
    a = [list(map(int, row)) for row in M]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = identity(rows)
    V = identity(cols)
    Vi = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src: int, dst: int, f: int) -> None:
        # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, f: int) -> None:
        # col_dst += f * col_src; inverse acts on rows of V_inv: row_src -= f * row_dst
        for row in a:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]
        Vi[src] = [x - f * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # enforce divisibility of the remaining block by the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                     if a[i][j] % a[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(bad[0], t, 1)
                    done = False
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    return SmithForm(diag, U, V, Vi)


@dataclass(frozen=True)
class CyclicDecomposition:
    """A subgroup of (Z/m)^n as a direct sum of cyclic factors."""

    m: int
    n: int
    generators: list[tuple[int, ...]]
    orders: list[int]

    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self) -> Iterable[tuple[int, ...]]:
        elems = [(0,) * self.n]
        for g, d in zip(self.generators, self.orders):
            elems = [
                tuple((x + k * y) % self.m for x, y in zip(e, g))
                for e in elems
                for k in range(d)
            ]
        return elems


def smith_normal_form(M: Sequence[Sequence[int]], m: int) -> CyclicDecomposition:
    """Cyclic decomposition of the subgroup of (Z/m)^cols spanned by the rows of M.

    Generators come out with orders d1 | d2 | ...; trivial factors are dropped.
    """
    rows = [[x % m for x in row] for row in M]
    n = len(rows[0]) if rows else 0
    if all(x == 0 for row in rows for x in row):
        return CyclicDecomposition(m, n, [], [])
    sf = smith(rows)
    gens, orders = [], []
    for i, d in enumerate(sf.diagonal):
        order = m // gcd(d, m)
        if order > 1:
            gens.append(tuple((d * x) % m for x in sf.V_inv[i]))
            orders.append(order)
    pairs = sorted(zip(orders, gens))
    return CyclicDecomposition(m, n, [g for _, g in pairs], [o for o, _ in pairs])


def kernel_mod(M: Sequence[Sequence[int]], m: int, ncols: int) -> CyclicDecomposition:
    """Cyclic decomposition of {g in (Z/m)^ncols : M g == 0 (mod m)}."""
    rows = [[x % m for x in row] for row in M] or [[0] * ncols]
    sf = smith(rows)
    diag = sf.diagonal + [0] * (ncols - len(sf.diagonal))
    gens, orders = [], []
    for i, d in enumerate(diag):
        order = gcd(d, m)
        if order > 1:
            step = m // order
            gens.append(tuple((step * sf.V[r][i]) % m for r in range(ncols)))
            orders.append(order)
    pairs = sorted(zip(orders, gens))
    return CyclicDecomposition(m, ncols, [g for _, g in pairs], [o for o, _ in pairs])


# -- cyclotomic integers -----------------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (ascending coefficients) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for i in range(dn + 1):
                num[k - dn + i] -= c * den[i]
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ExactArithmeticError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(num)


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[zeta_m], stored modulo zeta^m - 1 as m coefficients."""

    m: int
    coeffs: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ExactArithmeticError("conductor must be positive")
        c = tuple(self.coeffs)
        if len(c) < self.m:
            c = c + (0,) * (self.m - len(c))
        elif len(c) > self.m:
            folded = [0] * self.m
            for i, x in enumerate(c):
                folded[i % self.m] += x
            c = tuple(folded)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def integer(cls, m: int, n: int) -> "CyclotomicInt":
        return cls(m, (n,))

    @classmethod
    def zeta_power(cls, m: int, k: int = 1) -> "CyclotomicInt":
        c = [0] * m
        c[k % m] = 1
        return cls(m, tuple(c))

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Sequence[int]) -> "CyclotomicInt":
        return cls(m, tuple(counts))

    def _check(self, other: "CyclotomicInt") -> None:
        if other.m != self.m:
            raise ExactArithmeticError(f"conductor mismatch: {self.m} vs {other.m}")

    def _coerce(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.integer(self.m, other)
        self._check(other)
        return other

    def __add__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        other = self._coerce(other)
        return CyclotomicInt(self.m, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "CyclotomicInt":
        return self._coerce(other) - self

    def __mul__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.m, tuple(other * x for x in self.coeffs))
        self._check(other)
        m = self.m
        out = [0] * m
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[(i + j) % m] += x * y
        return CyclotomicInt(m, tuple(out))

    __rmul__ = __mul__

    def conj(self, k: int) -> "CyclotomicInt":
        """Galois conjugate zeta -> zeta^k."""
        m = self.m
        if gcd(k % m, m) != 1 and m > 1:
            raise ExactArithmeticError(f"{k} is not a unit modulo {m}")
        out = [0] * m
        for i, x in enumerate(self.coeffs):
            out[(i * k) % m] += x
        return CyclotomicInt(m, tuple(out))

    def reduced(self) -> tuple[int, ...]:
        """Canonical coefficients modulo the m-th cyclotomic polynomial."""
        _, rem = _poly_divmod(list(self.coeffs), list(cyclotomic_poly(self.m)))
        rem = list(rem) + [0] * (len(cyclotomic_poly(self.m)) - 1 - len(rem))
        return tuple(rem)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CyclotomicInt.integer(self.m, other)
        if not isinstance(other, CyclotomicInt) or other.m != self.m:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.m, self.reduced()))

    def as_rational_integer(self) -> int | None:
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0] if r else 0

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.reduced()) if c]
        return f"CyclotomicInt(m={self.m}: {' + '.join(terms) or '0'})"


def cyc_add(x: CyclotomicInt, y: CyclotomicInt) -> CyclotomicInt:
    return x + y


def cyc_mul(x: CyclotomicInt, y: CyclotomicInt) -> CyclotomicInt:
    return x * y


def cyc_conj(x: CyclotomicInt, k: int) -> CyclotomicInt:
    return x.conj(k)


def as_rational_integer(x: CyclotomicInt) -> int | None:
    return x.as_rational_integer()


# -- prime fields ------------------------------------------------------------


def find_primitive_root(q: int) -> int:
    """Smallest positive primitive root modulo the prime q."""
    if not is_prime(q):
        raise ExactArithmeticError(f"{q} is not prime")
    if q == 2:
        return 1
    n = q - 1
    primes = list(factorize(n))
    for g in range(2, q):
        if all(pow(g, n // p, q) != 1 for p in primes):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


class PrimeField:
    """F_q with a fixed primitive root and a discrete-log table."""

    def __init__(self, q: int):
        self.q = q
        self.g = find_primitive_root(q)
        self.exp = [0] * max(q - 1, 1)
        self.dlog = [-1] * q
        x = 1
        for k in range(q - 1):
            self.exp[k] = x
            self.dlog[x] = k
            x = x * self.g % q
        if q == 2:
            self.exp = [1]
            self.dlog[1] = 0

    def log(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ExactArithmeticError("zero has no discrete logarithm")
        return self.dlog[x]

    def __repr__(self) -> str:
        return f"PrimeField(q={self.q}, g={self.g})"
