"""Intersection lattices of curve configurations.

A configuration is a list of named curves with self-intersection numbers and
a sparse symmetric table of pairwise intersection numbers.  The file format
has two sections::

    # comment
    curves:
    E1 -2
    E2 -2
    pairs:
    E1 E2 1

Curve order in the file is the row/column order of the Gram matrix.  Pairs
not listed are 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .exact_arith import det, factorize, rank

QUINTIC45 = "quintic45.cfg"


class ConfigError(ValueError):
    pass


@dataclass
class CurveConfig:
    curves: list[tuple[str, int]] = field(default_factory=list)
    pairs: dict[frozenset[str], int] = field(default_factory=dict)

    def add_curve(self, name: str, self_intersection: int) -> None:
        if any(n == name for n, _ in self.curves):
            raise ConfigError(f"duplicate curve {name!r}")
        self.curves.append((name, self_intersection))

    def set_pair(self, a: str, b: str, value: int) -> None:
        if a == b:
            raise ConfigError(f"self-intersection of {a!r} belongs in the curves section")
        key = frozenset((a, b))
        if key in self.pairs and self.pairs[key] != value:
            raise ConfigError(f"conflicting values for pair {a} {b}")
        self.pairs[key] = value

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.curves]

    def dumps(self) -> str:
        lines = ["curves:"]
        lines += [f"{n} {s}" for n, s in self.curves]
        lines.append("pairs:")
        order = {n: i for i, n in enumerate(self.names)}
        for key, v in sorted(self.pairs.items(), key=lambda kv: sorted(order.get(n, -1) for n in kv[0])):
            a, b = sorted(key, key=lambda n: order.get(n, -1))
            lines.append(f"{a} {b} {v}")
        return "\n".join(lines) + "\n"


def loads(text: str) -> CurveConfig:
    cfg = CurveConfig()
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("curves:", "pairs:"):
            section = line[:-1]
            continue
        parts = line.split()
        try:
            if section == "curves" and len(parts) == 2:
                cfg.add_curve(parts[0], int(parts[1]))
            elif section == "pairs" and len(parts) == 3:
                cfg.set_pair(parts[0], parts[1], int(parts[2]))
            else:
                raise ConfigError(f"unexpected line in section {section!r}")
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return cfg


def load(path: str | Path) -> CurveConfig:
    return loads(Path(path).read_text())


def load_shipped(name: str = QUINTIC45) -> CurveConfig:
    return loads(resources.files("delsarte.data").joinpath(name).read_text())


@dataclass(frozen=True)
class GramMatrix:
    names: list[str]
    matrix: list[list[int]]

    @property
    def n(self) -> int:
        return len(self.names)


def gram(cfg: CurveConfig) -> GramMatrix:
    names = cfg.names
    index = {n: i for i, n in enumerate(names)}
    M = [[0] * len(names) for _ in names]
    for i, (_, s) in enumerate(cfg.curves):
        M[i][i] = s
    for key, v in cfg.pairs.items():
        a, b = tuple(key)
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise ConfigError(f"pair refers to unknown curve {missing!r}")
        M[index[a]][index[b]] = M[index[b]][index[a]] = v
    return GramMatrix(names, M)


def self_intersection_by_adjunction(genus: int, K_dot_C: int) -> int:
    """C^2 from 2g - 2 = C^2 + K.C."""
    return 2 * genus - 2 - K_dot_C


def det_exact(G: GramMatrix | Sequence[Sequence[int]]) -> int:
    return det(G.matrix if isinstance(G, GramMatrix) else G)


def gram_rank(G: GramMatrix | Sequence[Sequence[int]]) -> int:
    return rank(G.matrix if isinstance(G, GramMatrix) else G)


def signature(G: GramMatrix | Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(n_+, n_-, n_0) by exact symmetric elimination (Sylvester's law of inertia).

    Pivots on a nonzero diagonal entry when one exists; otherwise a
    congruence e_i -> e_i + e_j with a_ij != 0 creates one.
    """
    M = G.matrix if isinstance(G, GramMatrix) else G
    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ConfigError("signature requires a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            pos += p > 0
            neg += p < 0
            rest = [i for i in active if i != piv]
            for i in rest:
                f = a[i][piv] / p
                if f:
                    for j in rest:
                        a[i][j] -= f * a[piv][j]
            active = rest
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        # replace e_i by e_i + e_j: new diagonal 2*a_ij != 0
        for k in range(n):
            a[i0][k] += a[j0][k]
        for k in range(n):
            a[k][i0] += a[k][j0]
    return pos, neg, n - pos - neg


def leading_minor_signs(G: GramMatrix | Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    """Signature from sign changes in leading principal minors; None if one vanishes."""
    M = G.matrix if isinstance(G, GramMatrix) else G
    n = len(M)
    prev = 1
    pos = neg = 0
    for k in range(1, n + 1):
        d = det([row[:k] for row in M[:k]])
        if d == 0:
            return None
        if (d > 0) == (prev > 0):
            pos += 1
        else:
            neg += 1
        prev = d
    return pos, neg, 0


def format_factorization(n: int) -> str:
    if n == 0:
        return "0"
    f = factorize(n)
    body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(f.items())) or "1"
    return ("-" if n < 0 else "") + body


# -- the maximal quintic ------------------------------------------------------

_CYCLE = {"x": "y", "y": "z", "z": "w", "w": "x"}


def _line(a: str, b: str) -> str:
    order = "xyzw"
    a, b = sorted((a, b), key=order.index)
    return f"l_{a}{b}"


def build_quintic_config(verbatim_pairs: bool = False) -> CurveConfig:
    """The 45 curves spanning NS of the resolved quintic yzw^3+xyz^3+wxy^3+zwx^3.

    Nodes are labelled by the nonzero coordinate.  At the node w the chain
    E_w1..E_w9 meets l_xz at 1, l_yz at 3, the curves D at 8 and l_xy at 9;
    the other nodes follow by the coordinate cycle x -> y -> z -> w -> x,
    which carries D to C.  Only curves in the basis are recorded.

    Off the nodes, each l_alpha meets C_rho once and l_xz once (at
    [0, alpha^7, 0, 1]), while C_rho and l_xz are disjoint.  With
    ``verbatim_pairs`` the last two are swapped to the printed pair list
    (C_rho.l_xz = 1, l_alpha.l_xz = 0), which does not give det 202500.
    """
    cfg = CurveConfig()
    basis_lines = [_line("x", "y"), _line("y", "z"), _line("x", "z")]
    cs = ["C_rho1", "C_rho2"]
    ells = [f"l_alpha{k}" for k in (1, 3, 7, 9)]  # alpha = exp(pi i k / 5), alpha != -1
    nodes = ["w", "x", "y", "z"]
    for node in nodes:
        for i in range(1, 10):
            cfg.add_curve(f"E_{node}{i}", self_intersection_by_adjunction(0, 0))
    for name in basis_lines:
        cfg.add_curve(name, self_intersection_by_adjunction(0, 1))
    for name in cs:
        cfg.add_curve(name, self_intersection_by_adjunction(0, 3))
    for name in ells:
        cfg.add_curve(name, self_intersection_by_adjunction(0, 1))

    for node in nodes:
        for i in range(1, 9):
            cfg.set_pair(f"E_{node}{i}", f"E_{node}{i + 1}", 1)

    # attachments at node w, then transported along the cycle
    attach = {1: ("x", "z"), 3: ("y", "z"), 9: ("x", "y")}
    cubic_family = "D"
    node = "w"
    for _ in range(4):
        for comp, (a, b) in attach.items():
            name = _line(a, b)
            if name in basis_lines:
                cfg.set_pair(f"E_{node}{comp}", name, 1)
        if cubic_family == "C":
            for c in cs:
                cfg.set_pair(f"E_{node}8", c, 1)
        attach = {k: (_CYCLE[a], _CYCLE[b]) for k, (a, b) in attach.items()}
        node = _CYCLE[node]
        cubic_family = "C" if cubic_family == "D" else "D"

    for c in cs:
        for ell in ells:
            cfg.set_pair(c, ell, 1)
    if verbatim_pairs:
        for c in cs:
            cfg.set_pair(c, _line("x", "z"), 1)
    else:
        for ell in ells:
            cfg.set_pair(ell, _line("x", "z"), 1)
    return cfg
