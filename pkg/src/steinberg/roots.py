"""Root data for the split reductive groups handled here.

Roots are integer vectors in the basis of simple roots; weights are integer
vectors in the basis of fundamental weights.  The Cartan matrix
``cartan[i][j] = <alpha_j, alpha_i^vee>`` converts the first into the second,
so pairings and reflections stay inside integer arithmetic.

Indices of simple roots are 1-based at every public entry point (Bourbaki
numbering) and 0-based internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import IndexOutOfRange, InvalidType

_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _RANKS:
            raise InvalidType(f"unknown Cartan series {self.series!r}")
        if not isinstance(self.rank, int) or not _RANKS[self.series](self.rank):
            if self.series in "BC" and self.rank == 1:
                raise InvalidType(f"{self.series}1 is not accepted; use A1")
            raise InvalidType(f"rank {self.rank} is out of range for type {self.series}")

    def __str__(self):
        return f"{self.series}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> CartanType:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if m is None:
            raise InvalidType(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def _cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    s = t.series
    if s in "ABC":
        for i in range(1, n - 1):
            bond(i, i + 1)
        if n >= 2:
            # alpha_n is short in B_n, long in C_n
            bond(n - 1, n, *{"A": (-1, -1), "B": (-1, -2), "C": (-2, -1)}[s])
    elif s == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif s == "E":
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if j <= n:
                bond(i, j)
    elif s == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif s == "G":
        bond(1, 2, -3, -1)
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class Weight:
    """An integral weight in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    rho: Weight

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"simple root index {i} outside 1..{self.rank}")

    def root_pairing(self, beta: Iterable[int], i: int) -> int:
        """<beta, alpha_i^vee> for a root (or root lattice vector) beta; i is 0-based."""
        return sum(c * b for c, b in zip(self.cartan[i], beta))

    def reflect_root(self, i: int, beta: tuple[int, ...]) -> tuple[int, ...]:
        k = self.root_pairing(beta, i)
        if k == 0:
            return beta
        out = list(beta)
        out[i] -= k
        return tuple(out)

    def reflect_weight(self, i: int, lam: Weight) -> Weight:
        c = lam.coords[i]
        if c == 0:
            return lam
        return Weight(tuple(x - c * self.cartan[k][i] for k, x in enumerate(lam.coords)))

    def root_to_weight(self, beta: Iterable[int]) -> Weight:
        beta = tuple(beta)
        return Weight(tuple(self.root_pairing(beta, i) for i in range(self.rank)))

    def simple_root(self, i: int) -> Weight:
        """alpha_i (1-based) as a weight."""
        self.check_index(i)
        return Weight(tuple(self.cartan[k][i - 1] for k in range(self.rank)))


@lru_cache(maxsize=None)
def build_root_system(t: CartanType | str) -> RootSystem:
    if isinstance(t, str):
        t = CartanType.parse(t)
    a = _cartan_matrix(t)
    n = t.rank
    probe = RootSystem(t, a, (), Weight.zero(n))
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = probe.reflect_root(i, beta)
                if gamma not in seen and all(c >= 0 for c in gamma):
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    # within a height, descending lex order puts alpha_1 .. alpha_n first in order
    roots = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r))))
    return RootSystem(t, a, roots, Weight((1,) * n))


def pairing(lam: Weight, i: int, system: RootSystem | None = None) -> int:
    """<lam, alpha_i^vee> for 1-based i."""
    if system is not None:
        system.check_index(i)
    elif not 1 <= i <= len(lam):
        raise IndexOutOfRange(f"simple root index {i} outside 1..{len(lam)}")
    return lam.coords[i - 1]


def is_dominant(lam: Weight, subset: Iterable[int] | None = None) -> bool:
    """Dominance with respect to the simple roots in ``subset`` (default: all)."""
    if subset is None:
        return all(c >= 0 for c in lam.coords)
    return all(lam.coords[i - 1] >= 0 for i in subset)


def linear_action(w, lam: Weight) -> Weight:
    system = w.system
    for i in reversed(w.word):
        lam = system.reflect_weight(i - 1, lam)
    return lam


def dot_action(w, lam: Weight) -> Weight:
    """w . lam = w(lam + rho) - rho."""
    rho = w.system.rho
    return linear_action(w, lam + rho) - rho
