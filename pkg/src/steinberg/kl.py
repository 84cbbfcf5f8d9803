"""Kazhdan-Lusztig polynomials and the Verma multiplicities built from them.

Polynomials are computed a whole column ``{P_{x,y} : x <= y}`` at a time, by
the standard recursion along the smallest left descent ``s`` of ``y``
(``v = sy``)::

    P_{x,y} = P_{sx,y}                                   if sx > x
    P_{x,y} = P_{sx,v} + q P_{x,v}
              - sum_{z < v, sz < z} mu(z,v) q^{(l(y)-l(z))/2} P_{x,z}   if sx < x

Columns are filled in increasing length of ``y``; within a column ``x`` runs
by decreasing length so ``P_{sx,y}`` is always ready.  Entries are keyed on
the pair of group-table indices, canonicalised under ``(x, y) ->
(x^-1, y^-1)`` which leaves ``P`` unchanged, so column ``y^-1`` comes for free.

Multiplicities use ``m(x, y) = [M(x.lam) : L(y.lam)] = P_{x,y}(1)`` for
``lam`` dominant; the value is the same for every dominant ``lam`` because
``lam + rho`` is regular, so ``lam`` never enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InternalInconsistency, MixedRootSystems, NotMinimalRepresentative
from .roots import CartanType
from .weyl import SimpleSubset, WeylElem, WeylGroup, weyl_group


@dataclass(frozen=True)
class KLPoly:
    """Exact integer coefficients, ascending degree, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, q: int) -> int:
        out = 0
        for a in reversed(self.coeffs):
            out = out * q + a
        return out

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(a))
            else:
                terms.append(mono if a == 1 else f"{a}{mono}")
        return " + ".join(terms)


ZERO = KLPoly(())
ONE = KLPoly((1,))


class KLStore:
    """Insert-once table of Kazhdan-Lusztig polynomials for one Weyl group.

    Only pairs with ``x <= y`` in Bruhat order are stored; the zero
    polynomial is implicit.
    """

    def __init__(self, group: WeylGroup | CartanType | str):
        if not isinstance(group, WeylGroup):
            group = weyl_group(group)
        self.group = group
        self.cartan_type = group.cartan_type
        self.polys: dict[tuple[int, int], KLPoly] = {}
        self.hits = 0
        self._complete: set[int] = set()
        self._mu: dict[int, list[tuple[int, int]]] = {}
        self._leq: dict[tuple[int, int], bool] = {}

    def __len__(self):
        return len(self.polys)

    @property
    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "entries": len(self.polys)}

    def key(self, x: int, y: int) -> tuple[int, int]:
        inv = self.group.table.inverse
        return min((x, y), (inv[x], inv[y]))

    def publish(self, x: int, y: int, poly: KLPoly) -> KLPoly:
        key = self.key(x, y)
        old = self.polys.setdefault(key, poly)
        if old != poly:
            raise InternalInconsistency(f"conflicting values for P_{key}: {old} vs {poly}")
        return old

    def items(self) -> list[tuple[WeylElem, WeylElem, KLPoly]]:
        elements = self.group.table.elements
        return [(elements[x], elements[y], p) for (x, y), p in sorted(self.polys.items())]

    def _index(self, *elems: WeylElem) -> list[int]:
        index = self.group.table.index
        for w in elems:
            if w.system.cartan_type != self.cartan_type:
                raise MixedRootSystems(f"element of {w.system.cartan_type} used with a {self.cartan_type} store")
        return [index[w] for w in elems]


def _leq(store: KLStore, x: int, y: int) -> bool:
    t = store.group.table
    memo = store._leq
    visited = []
    while True:
        if t.length[x] > t.length[y]:
            result = False
            break
        if t.length[x] == t.length[y]:
            result = x == y
            break
        if t.length[x] == 0:
            result = True
            break
        hit = memo.get((x, y))
        if hit is not None:
            result = hit
            break
        visited.append((x, y))
        d = t.ldesc[y]
        s = (d & -d).bit_length() - 1
        if t.ldesc[x] >> s & 1:
            x = t.left[s][x]
        y = t.left[s][y]
    for key in visited:
        memo.setdefault(key, result)
    return result


def _lookup(store: KLStore, x: int, y: int) -> tuple[int, ...]:
    """P_{x,y} as a tuple; column y must be complete."""
    if x == y:
        return (1,)
    p = store.polys.get(store.key(x, y))
    return p.coeffs if p is not None else ()


def _check(store: KLStore, x: int, y: int, coeffs: list[int]) -> None:
    t = store.group.table
    d = t.length[y] - t.length[x]
    if not coeffs or coeffs[0] != 1 or any(a < 0 for a in coeffs) or 2 * (len(coeffs) - 1) > d - 1:
        elements = t.elements
        raise InternalInconsistency(
            f"P_{{{elements[x]!r},{elements[y]!r}}} = {coeffs} violates the KL invariants"
        )


def _column(store: KLStore, y: int) -> None:
    if y in store._complete:
        return
    t = store.group.table
    length, left, ldesc = t.length, t.left, t.ldesc
    store.publish(y, y, ONE)
    if length[y] == 0:
        store._complete.add(y)
        return
    s = (ldesc[y] & -ldesc[y]).bit_length() - 1
    v = left[s][y]
    _column(store, v)
    corrections = [(z, m) for z, m in _mu_list(store, v) if ldesc[z] >> s & 1]
    for z, _ in corrections:
        _column(store, z)
    ly = length[y]
    below = [x for x in range(len(length)) if length[x] < ly and _leq(store, x, y)]
    below.sort(key=lambda x: -length[x])
    for x in below:
        if store.key(x, y) in store.polys:
            continue
        sx = left[s][x]
        if not ldesc[x] >> s & 1:
            coeffs = list(_lookup(store, sx, y))
        else:
            a = _lookup(store, sx, v)
            b = _lookup(store, x, v)
            coeffs = [0] * max(len(a), len(b) + 1)
            for k, c in enumerate(a):
                coeffs[k] += c
            for k, c in enumerate(b):
                coeffs[k + 1] += c
            for z, m in corrections:
                if not _leq(store, x, z):
                    continue
                shift = (ly - length[z]) // 2
                pz = _lookup(store, x, z)
                if len(coeffs) < len(pz) + shift:
                    coeffs.extend([0] * (len(pz) + shift - len(coeffs)))
                for k, c in enumerate(pz):
                    coeffs[k + shift] -= m * c
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        _check(store, x, y, coeffs)
        store.publish(x, y, KLPoly(tuple(coeffs)))
    store._complete.add(y)
    store._complete.add(t.inverse[y])


def _mu_list(store: KLStore, v: int) -> list[tuple[int, int]]:
    """[(z, mu(z, v))] over z < v with mu nonzero; column v must be complete."""
    cached = store._mu.get(v)
    if cached is not None:
        return cached
    t = store.group.table
    lv = t.length[v]
    out = []
    for z in range(len(t.length)):
        d = lv - t.length[z]
        if d > 0 and d % 2 == 1:
            c = _lookup(store, z, v)
            k = (d - 1) // 2
            if k < len(c) and c[k]:
                out.append((z, c[k]))
    store._mu[v] = out
    return out


def kl_polynomial(x: WeylElem, y: WeylElem, store: KLStore) -> KLPoly:
    """P_{x,y}; the zero polynomial unless x <= y in Bruhat order."""
    xi, yi = store._index(x, y)
    if xi == yi:
        return store.publish(xi, yi, ONE)
    if not _leq(store, xi, yi):
        return ZERO
    p = store.polys.get(store.key(xi, yi))
    if p is not None:
        store.hits += 1
        return p
    _column(store, yi)
    return store.polys[store.key(xi, yi)]


def kl_table(store: KLStore) -> KLStore:
    """Fill every column, in increasing length."""
    for y in range(len(store.group.table.elements)):
        _column(store, y)
    return store


def mu(x: WeylElem, y: WeylElem, store: KLStore) -> int:
    d = y.length - x.length
    if d <= 0 or d % 2 == 0:
        store._index(x, y)
        return 0
    return kl_polynomial(x, y, store).coefficient((d - 1) // 2)


def verma_multiplicity(x: WeylElem, y: WeylElem, store: KLStore) -> int:
    """m(x, y) = [M(x.lam) : L(y.lam)] = P_{x,y}(1), zero unless x <= y."""
    return kl_polynomial(x, y, store)(1)


def parabolic_verma_multiplicity(
    K: SimpleSubset | Iterable[int], w: WeylElem, y: WeylElem, store: KLStore
) -> int:
    """[M_K(w.lam) : L(y.lam)] via ch M_K(mu) = sum_{u in W_K} (-1)^l(u) ch M(u.mu)."""
    group = store.group
    K = group.subset(K)
    store._index(w, y)
    if w.left_descent_mask & K.mask:
        raise NotMinimalRepresentative(f"{w!r} is not a shortest representative for W_{K}")
    total = 0
    for u in group.parabolic_subgroup(K):
        total += (-1) ** u.length * verma_multiplicity(u * w, y, store)
    if total < 0:
        raise InternalInconsistency(f"[M_{K}({w!r}) : L({y!r})] = {total} < 0")
    return total
