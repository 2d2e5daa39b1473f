"""Fermat coverings of Delsarte surfaces and their Lefschetz/Picard numbers.

A Delsarte surface is cut out by a sum of four monic monomials, recorded as a
4x4 exponent matrix A (rows = monomials, columns = x, y, z, w).  If A is
invertible there is a monomial map from the Fermat surface S_m onto it, with
exponent matrix B satisfying ``A @ B = m*I + (constant columns)``.  The
surface is birational to S_m / G for the covering group G, and its
transcendental cohomology is spanned by the G-invariant eigenspaces of
Hodge type (2,0) or (0,2) together with their Galois conjugates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Sequence

import numpy as np

from .characters import (
    Character,
    CharacterOrbit,
    b2_fermat,
    fermat_lambda,
    galois_closure,
    generate_characters,
    hodge_degree,
    orbit_decomposition,
)
from .exact_arith import (
    CyclicDecomposition,
    adjugate,
    det,
    identity,
    kernel_mod,
    matmul,
    smith_normal_form,
)
from .polynomial import PolynomialAST, format_polynomial, parse

QUINTIC_B2 = 53
QUINTIC_PG = 4
BRUTE_FORCE_MAX_M = 30


class DelsarteError(ValueError):
    """Input is not a well-formed four-monomial surface."""


class CoveringError(DelsarteError):
    """The exponent matrix does not admit a Fermat covering (singular, or a variable divides F)."""


class RDPFilterError(DelsarteError):
    """h^{2,0} of the invariant part dropped: singularities worse than rational double points."""


@dataclass(frozen=True)
class DelsarteSurface:
    A: tuple[tuple[int, ...], ...]
    degree: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], check: bool = True) -> "DelsarteSurface":
        A = tuple(tuple(int(x) for x in r) for r in rows)
        if len(A) != 4 or any(len(r) != 4 for r in A):
            raise DelsarteError(f"expected exactly four monomials in four variables, got {len(A)}")
        if any(x < 0 for r in A for x in r):
            raise DelsarteError("exponents must be nonnegative")
        degrees = {sum(r) for r in A}
        if len(degrees) != 1:
            raise DelsarteError(f"monomials have unequal degrees {sorted(degrees)}")
        surface = cls(A, degrees.pop())
        if check:
            surface.check_covering_candidate()
        return surface

    @classmethod
    def from_ast(cls, ast: PolynomialAST, check: bool = True) -> "DelsarteSurface":
        if len(ast.monomials) != 4:
            raise DelsarteError(f"expected exactly four monomials, got {len(ast.monomials)}")
        return cls.from_rows(ast.exponent_rows(), check=check)

    def check_covering_candidate(self) -> None:
        for j, v in enumerate("xyzw"):
            if all(r[j] > 0 for r in self.A):
                raise CoveringError(f"variable {v} divides every monomial")
        if det(self.A) == 0:
            raise CoveringError("exponent matrix is singular: not a Delsarte covering candidate")

    @property
    def polynomial(self) -> str:
        return format_polynomial(self.A)


def parse_exponent_matrix(text: str) -> DelsarteSurface:
    """Parse a four-term monomial sum into a validated Delsarte surface."""
    return DelsarteSurface.from_ast(parse(text))


@dataclass(frozen=True)
class FermatCovering:
    m: int
    B: list[list[int]]
    exponents: list[list[int]]
    condition: list[list[int]]
    G: CyclicDecomposition
    shift: int

    @property
    def G_generators(self) -> list[tuple[int, ...]]:
        return self.G.generators

    @property
    def G_order(self) -> int:
        return self.G.size


def fermat_degree(A: Sequence[Sequence[int]]) -> int:
    """Least m with m * A^{-1} integral."""
    d = abs(det(A))
    if d == 0:
        raise CoveringError("exponent matrix is singular")
    g = 0
    for row in adjugate(A):
        for x in row:
            g = gcd(g, x)
    return d // gcd(d, g)


def covering_group_bruteforce(condition: Sequence[Sequence[int]], m: int) -> CyclicDecomposition:
    """Enumerate {g in (Z/m)^3 : condition @ g == 0} and split it into cyclic summands.

    Each step takes, in colexicographic order (last coordinate most
    significant), the first element of largest order modulo the span so far
    whose cyclic group meets that span trivially; such an element always
    exists, so the orders multiply to |G|.
    """
    grid = np.indices((m, m, m)).reshape(3, -1).T.astype(np.int64)
    D = np.array(condition, dtype=np.int64).reshape(-1, 3)
    members = grid[np.all((grid @ D.T) % m == 0, axis=1)]
    members = members[np.lexsort((members[:, 0], members[:, 1], members[:, 2]))]

    def flat(v: np.ndarray) -> np.ndarray:
        return (v[..., 0] * m + v[..., 1]) * m + v[..., 2]

    in_span = np.zeros(m**3, dtype=bool)
    in_span[0] = True
    multiples = (np.arange(1, m + 1)[None, :, None] * members[:, None, :]) % m  # N x m x 3
    gens, orders = [], []
    while int(in_span.sum()) < len(members):
        hits = in_span[flat(multiples)]  # hits[i, k-1]: k * g_i in span
        rel = hits.argmax(axis=1) + 1
        true = m // np.gcd.reduce(np.concatenate([members, np.full((len(members), 1), m)], axis=1), axis=1)
        ok = np.flatnonzero(rel == true)
        best = ok[rel[ok] == rel[ok].max()][0]
        g, r = members[best], int(rel[best])
        span = np.flatnonzero(in_span)
        coords = np.stack([span // (m * m), (span // m) % m, span % m], axis=1)
        shifted = (coords[:, None, :] + np.arange(r)[None, :, None] * g[None, None, :]) % m
        in_span[flat(shifted).ravel()] = True
        gens.append(tuple(int(x) for x in g))
        orders.append(r)
    G = CyclicDecomposition(m, 3, gens, orders)
    assert G.size == len(members)
    return G


def compute_covering(surface: DelsarteSurface, method: str = "auto") -> FermatCovering:
    """Fermat degree, monomial map and covering group of a Delsarte surface.

    ``method`` picks how G is found: ``"brute"`` enumerates (Z/m)^3,
    ``"snf"`` reads generators off a Smith normal form, ``"auto"`` brute
    forces when m <= 30.
    """
    A = [list(r) for r in surface.A]
    D = det(A)
    if D == 0:
        raise CoveringError("exponent matrix is singular: not a Delsarte covering candidate")
    m = fermat_degree(A)
    adj = adjugate(A)
    # m * A^{-1} = m * adj / det, integral by choice of m
    E = [[m * x // D for x in row] for row in adj]
    shift = max(0, -min(x for row in E for x in row))
    exponents = [[x + shift for x in row] for row in E]
    B = [[x % m for x in row] for row in exponents]
    cond = [[(B[j][k] - B[0][k]) % m for k in (1, 2, 3)] for j in (1, 2, 3)]
    if method == "auto":
        method = "brute" if m <= BRUTE_FORCE_MAX_M else "snf"
    if method == "brute":
        G = covering_group_bruteforce(cond, m)
    elif method == "snf":
        G = kernel_mod(cond, m, 3)
    else:
        raise ValueError(f"unknown method {method!r}")
    return FermatCovering(m, B, exponents, cond, G, shift)


def pullback_constants(surface: DelsarteSurface, covering: FermatCovering) -> list[int] | None:
    """Column constants c_k with A @ exponents == m*I + c, or None if the identity fails."""
    P = matmul(surface.A, covering.exponents)
    mI = identity(4, covering.m)
    diff = [[P[i][k] - mI[i][k] for k in range(4)] for i in range(4)]
    consts = diff[0]
    if any(diff[i] != consts for i in range(4)):
        return None
    return consts


def dual_subgroup(covering: FermatCovering) -> CyclicDecomposition:
    """Characters (a1, a2, a3) of (Z/m)^3 trivial on G: the row span of the condition matrix."""
    return smith_normal_form(covering.condition, covering.m)


def invariant_characters(covering: FermatCovering, method: str = "dual") -> list[Character]:
    m = covering.m
    if m < 2:
        return []
    if method == "dual":
        out = []
        for a1, a2, a3 in dual_subgroup(covering).elements():
            a0 = (-a1 - a2 - a3) % m
            if a0 and a1 and a2 and a3:
                out.append(Character(m, (a0, a1, a2, a3)))
        return sorted(out)
    if method == "brute":
        gens = covering.G.generators
        return sorted(
            alpha
            for alpha in generate_characters(m)
            if all(sum(a * g for a, g in zip(alpha.a[1:], gen)) % m == 0 for gen in gens)
        )
    raise ValueError(f"unknown method {method!r}")


@dataclass
class DelsarteAnalysis:
    surface: DelsarteSurface
    covering: FermatCovering
    invariant_characters: list[Character]
    transcendental: set[Character] = field(repr=False)
    lambda_: int
    h20: int
    picard: int | None
    flags: list[str]

    @property
    def orbits(self) -> list[CharacterOrbit]:
        return orbit_decomposition(self.transcendental)

    def to_dict(self) -> dict:
        return {
            "polynomial": self.surface.polynomial,
            "degree": self.surface.degree,
            "A": [list(r) for r in self.surface.A],
            "m": self.covering.m,
            "B": self.covering.B,
            "g_order": self.covering.G_order,
            "g_generators": [
                {"generator": list(g), "order": o}
                for g, o in zip(self.covering.G.generators, self.covering.G.orders)
            ],
            "lambda": self.lambda_,
            "h20": self.h20,
            "picard": self.picard,
            "orbits": [
                {"representative": list(o.representative.a), "size": o.size}
                for o in self.orbits
            ],
            "flags": self.flags,
        }


def transcendental_invariants(covering: FermatCovering) -> set[Character]:
    inv = invariant_characters(covering)
    # G-invariance is Galois stable, so the closure stays inside inv
    return galois_closure(a for a in inv if hodge_degree(a) != 1)


def analyze(surface: DelsarteSurface, method: str = "auto") -> DelsarteAnalysis:
    covering = compute_covering(surface, method=method)
    inv = invariant_characters(covering)
    trans = galois_closure(a for a in inv if hodge_degree(a) != 1)
    h20 = sum(1 for a in inv if hodge_degree(a) == 0)
    flags: list[str] = []
    picard = None
    expected_pg = comb(surface.degree - 1, 3)
    if h20 != expected_pg:
        flags.append("worse-than-RDP")
    elif surface.degree == 5:
        picard = QUINTIC_B2 - len(trans)
    else:
        flags.append("picard-not-computed")
    return DelsarteAnalysis(surface, covering, inv, trans, len(trans), h20, picard, flags)


def lefschetz_number(surface: DelsarteSurface) -> int:
    return len(transcendental_invariants(compute_covering(surface)))


def h20_invariant_count(surface: DelsarteSurface) -> int:
    return sum(1 for a in invariant_characters(compute_covering(surface)) if hodge_degree(a) == 0)


def picard_number_quintic(surface: DelsarteSurface) -> int:
    if surface.degree != 5:
        raise DelsarteError(f"expected a quintic, got degree {surface.degree}")
    result = analyze(surface)
    if result.picard is None:
        raise RDPFilterError(f"RDP filter failed: h20 = {result.h20}, expected {QUINTIC_PG}")
    return result.picard


def picard_number_fermat(m: int) -> int:
    if m < 3:
        raise DelsarteError("Fermat degree must be at least 3")
    return b2_fermat(m) - fermat_lambda(m)
