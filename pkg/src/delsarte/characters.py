"""Characters of the Fermat surface S_m and their Galois orbits.

A character is a 4-tuple (a0, a1, a2, a3) of nonzero residues mod m summing
to 0 mod m.  It labels a one-dimensional eigenspace V(alpha) of H^2(S_m)
under the diagonal mu_m^3 action, and its Hodge type is read off from the
sum of the reduced representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exact_arith import units


class CharacterError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Character:
    m: int
    a: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise CharacterError("modulus must be at least 2")
        a = tuple(x % self.m for x in self.a)
        if len(a) != 4:
            raise CharacterError("a character has exactly four entries")
        if any(x == 0 for x in a):
            raise CharacterError(f"entries of {self.a} must be nonzero mod {self.m}")
        if sum(a) % self.m:
            raise CharacterError(f"entries of {self.a} must sum to 0 mod {self.m}")
        object.__setattr__(self, "a", a)

    @property
    def hodge_degree(self) -> int:
        return hodge_degree(self)

    def scale(self, k: int) -> "Character":
        return Character(self.m, tuple(k * x for x in self.a))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ")"


@dataclass(frozen=True)
class CharacterOrbit:
    representative: Character
    members: frozenset[Character]

    @property
    def size(self) -> int:
        return len(self.members)


def character_count(m: int) -> int:
    return (m - 1) * (m * m - 3 * m + 3)


def b2_fermat(m: int) -> int:
    """Second Betti number of the degree-m Fermat surface."""
    return m**3 - 4 * m**2 + 6 * m - 2


def generate_characters(m: int) -> list[Character]:
    if m < 2:
        raise CharacterError("m must be at least 2")
    out = []
    for a1 in range(1, m):
        for a2 in range(1, m):
            for a3 in range(1, m):
                a0 = (-a1 - a2 - a3) % m
                if a0:
                    out.append(Character(m, (a0, a1, a2, a3)))
    return out


def hodge_degree(alpha: Character) -> int:
    """0, 1 or 2; V(alpha) has Hodge type (2 - degree, degree)."""
    return sum(alpha.a) // alpha.m - 1


def in_transcendental_type_set(alpha: Character) -> bool:
    return hodge_degree(alpha) != 1


def galois_orbit(alpha: Character) -> CharacterOrbit:
    members = frozenset(alpha.scale(k) for k in units(alpha.m))
    return CharacterOrbit(min(members), members)


def galois_closure(chars: Iterable[Character]) -> set[Character]:
    out: set[Character] = set()
    for alpha in chars:
        if alpha not in out:
            out |= galois_orbit(alpha).members
    return out


def orbit_decomposition(chars: Iterable[Character]) -> list[CharacterOrbit]:
    """Partition the Galois closure of ``chars`` into orbits, sorted by representative."""
    seen: set[Character] = set()
    orbits = []
    for alpha in sorted(set(chars)):
        if alpha in seen:
            continue
        orb = galois_orbit(alpha)
        seen |= orb.members
        orbits.append(orb)
    return sorted(orbits, key=lambda o: o.representative)


def transcendental_characters(m: int) -> list[Character]:
    return [a for a in generate_characters(m) if in_transcendental_type_set(a)]


def fermat_lambda(m: int) -> int:
    if m < 2:
        raise CharacterError("m must be at least 2")
    return len(galois_closure(transcendental_characters(m)))
