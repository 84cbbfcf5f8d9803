"""Weyl group arithmetic on exact integer matrices.

An element is stored as its action on the simple-root basis (column ``j`` is
``w(alpha_j)`` in simple-root coordinates) together with the matrix of its
inverse, so both left and right descents are read off as signs of columns.

Words follow the operator convention: ``[1, 2]`` is ``s_1 s_2``, i.e. ``s_2``
acts first.  The canonical reduced word of ``w`` strips the smallest left
descent repeatedly.

Parabolic quotients use left descents throughout: ``min_coset_reps(I)`` is
the set of ``w`` with no left descent in ``I``, the shortest representatives
of ``W_I \\ W``.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import (
    IndexOutOfRange,
    InternalInconsistency,
    MixedRootSystems,
    SizeGuardExceeded,
)
from .roots import CartanType, RootSystem, build_root_system

DEFAULT_SIZE_GUARD = 10**6


def size_guard_from_env() -> int:
    raw = os.environ.get("STEINBERG_SIZE_GUARD")
    return int(raw) if raw else DEFAULT_SIZE_GUARD


@dataclass(frozen=True)
class SimpleSubset:
    """A subset of the simple roots, as a bitmask (bit ``i-1`` for index ``i``)."""

    mask: int
    rank: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.rank:
            raise IndexOutOfRange(f"subset mask {self.mask:#b} does not fit rank {self.rank}")

    @classmethod
    def of(cls, indices: Iterable[int], rank: int) -> SimpleSubset:
        mask = 0
        for i in indices:
            if not 1 <= i <= rank:
                raise IndexOutOfRange(f"simple root index {i} outside 1..{rank}")
            mask |= 1 << (i - 1)
        return cls(mask, rank)

    @classmethod
    def full(cls, rank: int) -> SimpleSubset:
        return cls((1 << rank) - 1, rank)

    @classmethod
    def empty(cls, rank: int) -> SimpleSubset:
        return cls(0, rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> SimpleSubset:
        """``"1,3"`` -> {1, 3}; the empty string is the empty set."""
        text = text.strip().strip("{}")
        if not text:
            return cls.empty(rank)
        try:
            return cls.of((int(p) for p in text.split(",")), rank)
        except ValueError as exc:
            raise IndexOutOfRange(f"cannot parse subset {text!r}") from exc

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.rank) if self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.rank and bool(self.mask >> (i - 1) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def _other(self, other: SimpleSubset) -> int:
        if other.rank != self.rank:
            raise MixedRootSystems("subsets of different rank")
        return other.mask

    def __or__(self, other):
        return SimpleSubset(self.mask | self._other(other), self.rank)

    def __and__(self, other):
        return SimpleSubset(self.mask & self._other(other), self.rank)

    def __sub__(self, other):
        return SimpleSubset(self.mask & ~self._other(other), self.rank)

    def __le__(self, other):
        return self.mask & ~self._other(other) == 0

    def __ge__(self, other):
        return other <= self

    def complement(self) -> SimpleSubset:
        return SimpleSubset.full(self.rank) - self

    def subsets(self) -> Iterator[SimpleSubset]:
        """All subsets, in ascending mask order."""
        for m in range(self.mask + 1):
            if m & ~self.mask == 0:
                yield SimpleSubset(m, self.rank)

    def between(self, upper: SimpleSubset) -> Iterator[SimpleSubset]:
        """All K with self <= K <= upper (empty if self is not inside upper)."""
        if not self <= upper:
            return
        for extra in (upper - self).subsets():
            yield self | extra

    def __str__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"

    def __repr__(self):
        return f"SimpleSubset({self})"


Matrix = tuple[tuple[int, ...], ...]


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    cols = list(zip(*y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in x)


def _negative(column: Sequence[int]) -> bool:
    # a root has all coordinates of one sign
    return sum(column) < 0


class WeylElem:
    """An element of a finite Weyl group, in canonical matrix form."""

    __slots__ = ("system", "matrix", "inv_matrix", "length", "_hash", "_word")

    def __init__(self, system: RootSystem, matrix: Matrix, inv_matrix: Matrix, length: int):
        self.system = system
        self.matrix = matrix
        self.inv_matrix = inv_matrix
        self.length = length
        self._hash = hash((system.cartan_type, matrix))
        self._word = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, WeylElem):
            return NotImplemented
        return self._hash == other._hash and self.matrix == other.matrix and (
            self.system.cartan_type == other.system.cartan_type
        )

    def __hash__(self):
        return self._hash

    def _check(self, other: WeylElem) -> None:
        if self.system.cartan_type != other.system.cartan_type:
            raise MixedRootSystems(
                f"elements of {self.system.cartan_type} and {other.system.cartan_type}"
            )

    def __mul__(self, other: WeylElem) -> WeylElem:
        self._check(other)
        m = _matmul(self.matrix, other.matrix)
        return WeylElem(self.system, m, _matmul(other.inv_matrix, self.inv_matrix), _inversions(self.system, m))

    def inverse(self) -> WeylElem:
        w = WeylElem(self.system, self.inv_matrix, self.matrix, self.length)
        if self._word is not None and self.length <= 1:
            w._word = self._word
        return w

    def is_left_descent(self, i: int) -> bool:
        """1-based i; true iff l(s_i w) < l(w)."""
        return _negative([row[i - 1] for row in self.inv_matrix])

    def is_right_descent(self, i: int) -> bool:
        return _negative([row[i - 1] for row in self.matrix])

    @property
    def left_descent_mask(self) -> int:
        rank = self.system.rank
        return sum(1 << i for i in range(rank) if self.is_left_descent(i + 1))

    @property
    def right_descent_mask(self) -> int:
        rank = self.system.rank
        return sum(1 << i for i in range(rank) if self.is_right_descent(i + 1))

    def left_reflect(self, i: int) -> WeylElem:
        """s_i * w for 1-based i."""
        system = self.system
        k = i - 1
        new_row = tuple(
            self.matrix[k][c] - system.root_pairing((row[c] for row in self.matrix), k)
            for c in range(system.rank)
        )
        m = self.matrix[:k] + (new_row,) + self.matrix[k + 1:]
        # (s_i w)^-1 = w^-1 s_i: column j picks up -a_kj times column k
        inv = self.inv_matrix
        a = system.cartan[k]
        inv = tuple(tuple(r[j] - a[j] * r[k] for j in range(system.rank)) for r in inv)
        length = self.length - 1 if self.is_left_descent(i) else self.length + 1
        return WeylElem(system, m, inv, length)

    def right_reflect(self, i: int) -> WeylElem:
        """w * s_i for 1-based i."""
        return self.inverse().left_reflect(i).inverse()

    @property
    def word(self) -> tuple[int, ...]:
        if self._word is None:
            letters = []
            w = self
            while w.length:
                i = next(j for j in range(1, w.system.rank + 1) if w.is_left_descent(j))
                letters.append(i)
                w = w.left_reflect(i)
            self._word = tuple(letters)
        return self._word

    def __repr__(self):
        if not self.length:
            return "e"
        return "".join(f"s{i}" for i in self.word)


def _inversions(system: RootSystem, m: Matrix) -> int:
    return sum(
        1 for beta in system.positive_roots if sum(sum(r[j] * beta[j] for j in range(len(beta))) for r in m) < 0
    )


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass
class GroupTable:
    """Integer-indexed view of an enumerated group, for the hot loops."""

    elements: list[WeylElem]
    index: dict[WeylElem, int]
    length: list[int]
    left: list[list[int]]  # left[i][k] = index of s_{i+1} * elements[k]
    inverse: list[int]
    ldesc: list[int]  # left descent bitmask


class WeylGroup:
    """The Weyl group of one Cartan type, with enumeration guarded by size."""

    def __init__(self, cartan: CartanType | str, size_guard: int | None = None, allow_large: bool = False):
        self.system = build_root_system(cartan)
        self.cartan_type = self.system.cartan_type
        self.rank = self.system.rank
        self.size_guard = size_guard_from_env() if size_guard is None else size_guard
        self.allow_large = allow_large
        self._bruhat: dict[tuple[WeylElem, WeylElem], bool] = {}
        n = self.rank
        eye = _identity_matrix(n)
        self.identity = WeylElem(self.system, eye, eye, 0)
        self.identity._word = ()
        self._simple = [self.identity.left_reflect(i) for i in range(1, n + 1)]
        for i, s in enumerate(self._simple, 1):
            s._word = (i,)

    def __repr__(self):
        return f"WeylGroup({self.cartan_type})"

    # subsets

    @property
    def delta(self) -> SimpleSubset:
        return SimpleSubset.full(self.rank)

    @property
    def empty(self) -> SimpleSubset:
        return SimpleSubset.empty(self.rank)

    def subset(self, indices: Iterable[int] | str | SimpleSubset) -> SimpleSubset:
        if isinstance(indices, SimpleSubset):
            if indices.rank != self.rank:
                raise MixedRootSystems("subset of different rank")
            return indices
        if isinstance(indices, str):
            return SimpleSubset.parse(indices, self.rank)
        return SimpleSubset.of(indices, self.rank)

    def all_subsets(self) -> Iterator[SimpleSubset]:
        return self.delta.subsets()

    # element arithmetic

    def _own(self, *elems: WeylElem) -> None:
        for w in elems:
            if w.system.cartan_type != self.cartan_type:
                raise MixedRootSystems(f"element of {w.system.cartan_type} used with {self.cartan_type}")

    def simple(self, i: int) -> WeylElem:
        self.system.check_index(i)
        return self._simple[i - 1]

    def from_word(self, word: Iterable[int]) -> WeylElem:
        word = list(word)
        for i in word:
            self.system.check_index(i)
        w = self.identity
        for i in reversed(word):
            w = w.left_reflect(i)
        return w

    def multiply(self, x: WeylElem, y: WeylElem) -> WeylElem:
        self._own(x, y)
        return x * y

    def inverse(self, x: WeylElem) -> WeylElem:
        self._own(x)
        return x.inverse()

    def to_word(self, x: WeylElem) -> tuple[int, ...]:
        self._own(x)
        return x.word

    def left_descents(self, w: WeylElem) -> SimpleSubset:
        self._own(w)
        return SimpleSubset(w.left_descent_mask, self.rank)

    def right_descents(self, w: WeylElem) -> SimpleSubset:
        self._own(w)
        return SimpleSubset(w.right_descent_mask, self.rank)

    def i_max(self, w: WeylElem) -> SimpleSubset:
        """The largest I with w a shortest representative of its W_I-coset."""
        return self.left_descents(w).complement()

    # Bruhat order

    def bruhat_leq(self, x: WeylElem, y: WeylElem) -> bool:
        """x <= y, by the lifting property along left descents of y."""
        self._own(x, y)
        memo = self._bruhat
        visited = []
        while True:
            if x.length > y.length:
                result = False
                break
            if x.length == y.length:
                result = x == y
                break
            if x.length == 0:
                result = True
                break
            hit = memo.get((x, y))
            if hit is not None:
                result = hit
                break
            visited.append((x, y))
            s = (y.left_descent_mask & -y.left_descent_mask).bit_length()
            if x.is_left_descent(s):
                x = x.left_reflect(s)
            y = y.left_reflect(s)
        for key in visited:
            memo.setdefault(key, result)
        return result

    def support(self, w: WeylElem) -> SimpleSubset:
        self._own(w)
        if w.length == 0:
            return self.empty
        return SimpleSubset.of((i for i in range(1, self.rank + 1) if self.bruhat_leq(self._simple[i - 1], w)), self.rank)

    def in_parabolic(self, w: WeylElem, subset: SimpleSubset) -> bool:
        return self.support(w) <= subset

    # orders and enumeration

    def order(self, subset: SimpleSubset | None = None) -> int:
        """|W_I| from the height distribution of the positive roots of Phi_I.

        The numbers of roots of each height form the partition dual to the
        exponents, and |W_I| is the product of (exponent + 1).
        """
        subset = self.delta if subset is None else self.subset(subset)
        heights = Counter(
            sum(beta) for beta in self.system.positive_roots
            if all(c == 0 or (k + 1) in subset for k, c in enumerate(beta))
        )
        top = max(heights, default=0)
        return prod((h + 1) ** (heights[h] - heights.get(h + 1, 0)) for h in range(1, top + 1))

    def _guard(self, size: int, what: str) -> None:
        if size > self.size_guard and not self.allow_large:
            raise SizeGuardExceeded(
                f"{what} of {self.cartan_type} has {size} elements, above the guard "
                f"{self.size_guard}; pass the override flag or raise STEINBERG_SIZE_GUARD"
            )

    @staticmethod
    def _sort_key(w: WeylElem):
        return (w.length, w.word)

    def _closure(self, generators: Sequence[int], keep=None) -> list[WeylElem]:
        """Breadth-first closure of the identity under left multiplication.

        Canonical words are filled in on the way: the smallest left descent
        of a new element always leads back to the previous level.
        """
        level = {self.identity: self.identity}
        out = [self.identity]
        while level:
            nxt = {}
            for w in level:
                for i in generators:
                    if w.is_left_descent(i):
                        continue
                    v = w.left_reflect(i)
                    if v in nxt or (keep is not None and not keep(v)):
                        continue
                    j = (v.left_descent_mask & -v.left_descent_mask).bit_length()
                    prev = level.get(v.left_reflect(j)) if j != i else w
                    if prev is not None and prev._word is not None:
                        v._word = (j,) + prev._word
                    nxt[v] = v
            out.extend(nxt)
            level = nxt
        out.sort(key=self._sort_key)
        return out

    def enumerate_group(self) -> list[WeylElem]:
        return list(self._elements)

    @cached_property
    def _elements(self) -> list[WeylElem]:
        self._guard(self.order(), "the Weyl group")
        return self._closure(range(1, self.rank + 1))

    def parabolic_subgroup(self, subset: SimpleSubset) -> list[WeylElem]:
        subset = self.subset(subset)
        return list(self._parabolic(subset.mask))

    @lru_cache(maxsize=None)
    def _parabolic(self, mask: int) -> tuple[WeylElem, ...]:
        subset = SimpleSubset(mask, self.rank)
        self._guard(self.order(subset), f"the parabolic subgroup W_{subset}")
        return tuple(self._closure(subset.indices))

    def min_coset_reps(self, subset: SimpleSubset) -> list[WeylElem]:
        subset = self.subset(subset)
        return list(self._coset_reps(subset.mask))

    @lru_cache(maxsize=None)
    def _coset_reps(self, mask: int) -> tuple[WeylElem, ...]:
        subset = SimpleSubset(mask, self.rank)
        self._guard(self.order() // self.order(subset), f"the quotient by W_{subset}")
        # closed under taking prefixes of the canonical word, so grow by right
        # multiplication and filter
        level = [self.identity]
        seen = {self.identity}
        while level:
            nxt = []
            for w in level:
                for i in range(1, self.rank + 1):
                    if w.is_right_descent(i):
                        continue
                    v = w.right_reflect(i)
                    if v not in seen and not v.left_descent_mask & mask:
                        seen.add(v)
                        nxt.append(v)
            level = nxt
        return tuple(sorted(seen, key=self._sort_key))

    def longest_element(self, subset: SimpleSubset | None = None) -> WeylElem:
        subset = self.delta if subset is None else self.subset(subset)
        w = self.identity
        grown = True
        while grown:
            grown = False
            for i in subset:
                if not w.is_left_descent(i):
                    w = w.left_reflect(i)
                    grown = True
        return w

    def coxeter_elements(self, subset: SimpleSubset) -> frozenset[WeylElem]:
        subset = self.subset(subset)
        return frozenset(self.from_word(p) for p in itertools.permutations(subset.indices))

    def parabolic_class_count(self, subset: SimpleSubset) -> int:
        """#{w : i_max(w) = I}, by enumeration and by inclusion-exclusion."""
        subset = self.subset(subset)
        target = subset.complement().mask
        direct = sum(1 for w in self._elements if w.left_descent_mask == target)
        total = self.order()
        formula = sum(
            (-1) ** len(j) * (total // self.order(subset | j))
            for j in subset.complement().subsets()
        )
        if direct != formula:
            raise InternalInconsistency(
                f"|W^{subset}_p|: enumeration gives {direct}, alternating sum gives {formula}"
            )
        return direct

    @cached_property
    def table(self) -> GroupTable:
        elements = self._elements
        index = {w: k for k, w in enumerate(elements)}
        left = [[index[w.left_reflect(i)] for w in elements] for i in range(1, self.rank + 1)]
        return GroupTable(
            elements=elements,
            index=index,
            length=[w.length for w in elements],
            left=left,
            inverse=[index[w.inverse()] for w in elements],
            ldesc=[w.left_descent_mask for w in elements],
        )


@lru_cache(maxsize=None)
def weyl_group(cartan: CartanType | str, allow_large: bool = False) -> WeylGroup:
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    return WeylGroup(cartan, allow_large=allow_large)
