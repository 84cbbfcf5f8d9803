"""Jordan-Hoelder content of induced and (generalized) Steinberg representations.

Nothing is materialised: an irreducible constituent
``F^G_{P_I}(L(w.lam), v^{P_I}_{P_J})`` is the label ``(w, J)`` with
``I = i_max(w)`` and highest weight ``w.lam``; two constituents are
isomorphic exactly when their labels agree, so a Jordan-Hoelder series is a
multiset of labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InternalInconsistency, InvalidJ, NotDominant, NotMinimalRepresentative
from .kl import KLStore, parabolic_verma_multiplicity, verma_multiplicity
from .roots import Weight, dot_action, is_dominant
from .weyl import SimpleSubset, WeylElem, WeylGroup, weyl_group

Label = tuple[WeylElem, SimpleSubset]


def smooth_part(I: SimpleSubset, J: SimpleSubset) -> str:
    if J == I:
        return "1"
    text = "v^{P_{%s}}_{P_{%s}}" % (",".join(map(str, I)), ",".join(map(str, J)))
    return text + " (St)" if not J else text


@dataclass(frozen=True)
class JHFactor:
    w: WeylElem
    I: SimpleSubset
    J: SimpleSubset
    highest_weight: Weight
    mult: int

    @property
    def label(self) -> Label:
        return (self.w, self.J)

    @property
    def smooth_part(self) -> str:
        return smooth_part(self.I, self.J)

    def sort_key(self):
        return (self.w.length, self.w.word, self.J.mask)


class FactorMultiset:
    """Finite multiset of constituent labels with positive multiplicities."""

    def __init__(self, factors: Iterable[JHFactor]):
        factors = sorted(factors, key=JHFactor.sort_key)
        seen = set()
        for f in factors:
            if f.label in seen:
                raise InternalInconsistency(f"duplicate constituent {f.w!r}, J={f.J}")
            if f.mult < 1:
                raise InternalInconsistency(f"non-positive multiplicity for {f.w!r}, J={f.J}")
            seen.add(f.label)
        self.factors = factors

    @property
    def length(self) -> int:
        return sum(f.mult for f in self.factors)

    @property
    def distinct(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[JHFactor]:
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        if not isinstance(other, FactorMultiset):
            return NotImplemented
        return self.factors == other.factors

    def counts(self) -> dict[Label, int]:
        """The multiset with the highest-weight labels erased."""
        return {f.label: f.mult for f in self.factors}

    def multiplicity(self, w: WeylElem, J: SimpleSubset) -> int:
        return self.counts().get((w, J), 0)

    def __repr__(self):
        return f"FactorMultiset(length={self.length}, distinct={self.distinct})"


def accumulate(total: dict[Label, int], part: FactorMultiset | dict[Label, int], sign: int = 1) -> None:
    items = part.counts().items() if isinstance(part, FactorMultiset) else part.items()
    for key, m in items:
        total[key] = total.get(key, 0) + sign * m


def _materialise(group: WeylGroup, counts: dict[Label, int], lam: Weight, what: str) -> FactorMultiset:
    negative = {k: m for k, m in counts.items() if m < 0}
    if negative:
        (w, J), m = next(iter(negative.items()))
        raise InternalInconsistency(f"{what}: constituent ({w!r}, J={J}) has multiplicity {m}")
    return FactorMultiset(
        JHFactor(w, group.i_max(w), J, dot_action(w, lam), m)
        for (w, J), m in counts.items() if m
    )


def require_dominant(store: KLStore, lam: Weight | None) -> Weight:
    rank = store.group.rank
    if lam is None:
        return Weight.zero(rank)
    if len(lam) != rank:
        raise NotDominant(f"weight {lam} has {len(lam)} coordinates, rank is {rank}")
    if not is_dominant(lam):
        raise NotDominant(f"weight {lam} is not dominant")
    return lam


def steinberg_multiplicity(w: WeylElem, J: SimpleSubset | Iterable[int], store: KLStore) -> int:
    """Multiplicity of the constituent (w, J) in V^G_B(lam).

    sum over w' with supp(w') = J of (-1)^{l(w') + |J|} m(w', w).
    """
    group = store.group
    J = group.subset(J)
    if not J <= group.i_max(w):
        raise InvalidJ(f"J={J} is not contained in I({w!r})={group.i_max(w)}")
    total = 0
    for u in group.parabolic_subgroup(J):
        if group.support(u) == J:
            total += (-1) ** (u.length + len(J)) * verma_multiplicity(u, w, store)
    if total < 0:
        raise InternalInconsistency(f"negative Steinberg multiplicity {total} at ({w!r}, J={J})")
    return total


def jh_steinberg(lam: Weight | None, store: KLStore) -> FactorMultiset:
    """Jordan-Hoelder multiset of V^G_B(lam) from the closed multiplicity formula."""
    lam = require_dominant(store, lam)
    group = store.group
    counts = {}
    for w in group.enumerate_group():
        for J in group.i_max(w).subsets():
            m = steinberg_multiplicity(w, J, store)
            if m:
                counts[(w, J)] = m
    return _materialise(group, counts, lam, "V_B")


def _induced_counts(group: WeylGroup, K: SimpleSubset, w: WeylElem, store: KLStore) -> dict[Label, int]:
    counts = {}
    for y in group.enumerate_group():
        if y.left_descent_mask & K.mask or not group.bruhat_leq(w, y):
            continue
        c = parabolic_verma_multiplicity(K, w, y, store)
        if c:
            for J in K.between(group.i_max(y)):
                counts[(y, J)] = c
    return counts


def jh_induced(
    K: SimpleSubset | Iterable[int], w: WeylElem | None, lam: Weight | None, store: KLStore
) -> FactorMultiset:
    """Jordan-Hoelder multiset of I^G_{P_K}(w) = Ind^G_{P_K}(V_K(w.lam)').

    A simple L(y.lam) of M_K(w.lam) with multiplicity c contributes the
    constituents (y, J), K <= J <= I(y), each with multiplicity c.
    """
    group = store.group
    K = group.subset(K)
    w = group.identity if w is None else w
    lam = require_dominant(store, lam)
    if w.left_descent_mask & K.mask:
        raise NotMinimalRepresentative(f"{w!r} is not a shortest representative for W_{K}")
    return _materialise(group, _induced_counts(group, K, w, store), lam, f"I_{K}")


def generalized_steinberg_counts(
    I: SimpleSubset, w: WeylElem, store: KLStore
) -> tuple[dict[Label, int], list[tuple[SimpleSubset, int, dict[Label, int]]]]:
    """Euler characteristic of the Tits-type resolution, with its terms."""
    group = store.group
    total: dict[Label, int] = {}
    terms = []
    for K in I.between(group.i_max(w)):
        sign = (-1) ** (len(K) - len(I))
        part = _induced_counts(group, K, w, store)
        accumulate(total, part, sign)
        terms.append((K, sign, part))
    return total, terms


def jh_generalized_steinberg(
    I: SimpleSubset | Iterable[int], w: WeylElem | None, lam: Weight | None, store: KLStore
) -> FactorMultiset:
    """Jordan-Hoelder multiset of V^G_{P_I}(w) as sum_{I<=K<=I(w)} (-1)^{|K-I|} [I^G_{P_K}(w)]."""
    group = store.group
    I = group.subset(I)
    w = group.identity if w is None else w
    lam = require_dominant(store, lam)
    if w.left_descent_mask & I.mask:
        raise NotMinimalRepresentative(f"{w!r} is not a shortest representative for W_{I}")
    total, _ = generalized_steinberg_counts(I, w, store)
    return _materialise(group, total, lam, f"V_{I}({w!r})")


def coxeter_criterion(I: SimpleSubset | Iterable[int], w: WeylElem, group: WeylGroup | None = None) -> bool:
    """Whether some Coxeter element of W_I lies below w in Bruhat order."""
    group = weyl_group(w.system.cartan_type) if group is None else group
    I = group.subset(I)
    return any(group.bruhat_leq(c, w) for c in group.coxeter_elements(I))
