"""Diagonal automorphisms acting on holomorphic 2-forms, and CM-type checks.

For a surface F = 0 of degree d and g = diag(zeta^w_x, zeta^w_y, zeta^w_z,
zeta^w_w) with F semi-invariant (F o g = zeta^c F), the residue forms
mu * Omega / F, with mu running over monomials of degree d - 4, span
H^{2,0} and g acts on each by zeta^(wt(mu) + sum(w) - c).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .delsarte import DelsarteSurface
from .exact_arith import euler_phi, units


class SemiInvarianceError(ValueError):
    """The polynomial is not semi-invariant under the automorphism."""


@dataclass(frozen=True)
class DiagonalAutomorphism:
    n: int
    weights: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "weights", tuple(w % self.n for w in self.weights))

    def weight(self, exponents) -> int:
        return sum(e * w for e, w in zip(exponents, self.weights)) % self.n


def h20_weights(aut: DiagonalAutomorphism, surface: DelsarteSurface) -> list[int]:
    """Exponents k with g* = zeta^k on a monomial basis of H^{2,0}, sorted."""
    n, d = aut.n, surface.degree
    wts = {aut.weight(row) for row in surface.A}
    if len(wts) != 1:
        raise SemiInvarianceError(
            f"monomial weights {sorted(wts)} mod {n} disagree: polynomial not semi-invariant"
        )
    c_F = wts.pop()
    total = sum(aut.weights)
    out = []
    k = d - 4
    if k < 0:
        return []
    # monomials in x, y, z of degree <= d - 4 (chart w = 1), homogenized by w
    for i, j, l in product(range(k + 1), repeat=3):
        if i + j + l <= k:
            mu = (i, j, l, k - i - j - l)
            out.append((aut.weight(mu) + total - c_F) % n)
    return sorted(out)


@dataclass(frozen=True)
class CMTypeCandidate:
    n: int
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class CMVerdict:
    is_cm_type: bool
    non_units: tuple[int, ...]
    duplicates: tuple[int, ...]
    conjugate_pairs: tuple[tuple[int, int], ...]
    missing: tuple[int, ...]

    @property
    def reason(self) -> str:
        if self.is_cm_type:
            return "CM-type"
        parts = []
        if self.non_units:
            parts.append(f"non-unit exponents {list(self.non_units)}")
        if self.duplicates:
            parts.append(f"duplicates {list(self.duplicates)}")
        if self.conjugate_pairs:
            parts.append(f"conjugate pairs {[list(p) for p in self.conjugate_pairs]}")
        if self.missing:
            parts.append(f"units {list(self.missing)} not covered up to sign")
        return "; ".join(parts)


def cm_verdict(c: CMTypeCandidate) -> CMVerdict:
    n = c.n
    ex = [e % n for e in c.exponents]
    non_units = tuple(sorted({e for e in ex if n > 1 and gcd(e, n) != 1}))
    seen, dups = set(), set()
    for e in ex:
        if e in seen:
            dups.add(e)
        seen.add(e)
    unit_set = set(units(n))
    s = {e for e in seen if e in unit_set}
    pairs = tuple(sorted((e, (-e) % n) for e in s if (-e) % n in s and e < (-e) % n))
    if n <= 2:
        # -1 = 1: the only unit is its own conjugate
        pairs = tuple((e, e) for e in s if (-e) % n == e)
    covered = s | {(-e) % n for e in s}
    missing = tuple(sorted(unit_set - covered))
    ok = not non_units and not dups and not pairs and not missing
    return CMVerdict(ok, non_units, tuple(sorted(dups)), pairs, missing)


def is_cm_type(c: CMTypeCandidate) -> bool:
    """Distinct units, disjoint from their negatives, covering (Z/n)* together with them."""
    return cm_verdict(c).is_cm_type


def conclude_transcendental_dimension(n: int, b2: int, rho_lower: int) -> tuple[int, int] | None:
    """Pin down dim T when phi(n) | dim T and dim T <= b2 - rho_lower leave one choice."""
    step = euler_phi(n)
    upper = b2 - rho_lower
    options = [k for k in range(step, upper + 1, step)]
    if len(options) != 1:
        return None
    return options[0], b2 - options[0]
