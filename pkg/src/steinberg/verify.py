"""Consistency checks between independent routes to the same multisets.

Each check returns a :class:`Report` and never raises on a violated identity;
the CLI turns a failed report into exit code 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency
from .jh import (
    accumulate,
    coxeter_criterion,
    generalized_steinberg_counts,
    jh_steinberg,
    steinberg_multiplicity,
    require_dominant,
)
from .kl import KLStore, kl_polynomial, kl_table
from .roots import Weight
from .weyl import SimpleSubset


@dataclass
class Report:
    check: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.lines.append("FAIL " + message)

    def note(self, message: str) -> None:
        self.lines.append(message)

    def summary(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.check}"


def _fmt(counts) -> str:
    items = sorted(counts.items(), key=lambda kv: (kv[0][0].length, kv[0][0].word, kv[0][1].mask))
    return "{" + ", ".join(f"({w!r},{J}):{m}" for (w, J), m in items if m) + "}"


def verify_tits_euler(I: SimpleSubset, lam: Weight | None, store: KLStore) -> Report:
    """V_{P_I}(lam) as the alternating sum of I_{P_K}(lam) over I <= K <= Delta."""
    group = store.group
    I = group.subset(I)
    lam = require_dominant(store, lam)
    report = Report(f"tits-euler {group.cartan_type} I={I} lambda={lam}")
    total, terms = generalized_steinberg_counts(I, group.identity, store)
    for K, sign, part in terms:
        report.note(f"K={K} sign={sign:+d} length={sum(part.values())} distinct={len(part)}")
    negative = {k: m for k, m in total.items() if m < 0}
    if negative:
        report.fail(f"negative multiplicities {_fmt(negative)}")
    if not I:
        closed = jh_steinberg(lam, store).counts()
        euler = {k: m for k, m in total.items() if m}
        if euler != closed:
            report.fail(f"Euler sum {_fmt(euler)} differs from closed formula {_fmt(closed)}")
        else:
            report.note(f"matches closed formula: length={sum(closed.values())} distinct={len(closed)}")
    return report


def verify_smooth_complex(I: SimpleSubset, lam: Weight | None, store: KLStore) -> Report:
    """[v_{P_I}(lam)] = sum over w in ^I W of (-1)^l(w) [V_{P_I}(w)]."""
    group = store.group
    I = group.subset(I)
    lam = require_dominant(store, lam)
    report = Report(f"smooth-complex {group.cartan_type} I={I} lambda={lam}")
    total: dict = {}
    for w in group.min_coset_reps(I):
        part, _ = generalized_steinberg_counts(I, w, store)
        if any(m < 0 for m in part.values()):
            report.fail(f"V_{I}({w!r}) has negative multiplicities")
        accumulate(total, part, (-1) ** w.length)
        report.note(f"w={w!r} sign={(-1) ** w.length:+d} length={sum(part.values())}")
    total = {k: m for k, m in total.items() if m}
    expected = {(group.identity, I): 1}
    if total != expected:
        report.fail(f"alternating sum {_fmt(total)} != {_fmt(expected)}")
    return report


def verify_support(store: KLStore) -> Report:
    """Nonvanishing law and the parabolic-membership characterisation of support."""
    group = store.group
    report = Report(f"support {group.cartan_type}")
    members = {I: set(group.parabolic_subgroup(I)) for I in group.all_subsets()}
    for w in group.enumerate_group():
        supp = group.support(w)
        for I, elems in members.items():
            if (supp <= I) != (w in elems):
                report.fail(f"supp({w!r})={supp} but membership in W_{I} is {w in elems}")
        for J in group.i_max(w).subsets():
            try:
                m = steinberg_multiplicity(w, J, store)
            except InternalInconsistency as exc:
                report.fail(str(exc))
                continue
            if (m > 0) != (J <= supp):
                report.fail(f"multiplicity {m} at ({w!r}, J={J}) with supp={supp}")
    return report


def verify_coxeter(store: KLStore) -> Report:
    group = store.group
    report = Report(f"coxeter {group.cartan_type}")
    for w in group.enumerate_group():
        supp = group.support(w)
        for I in group.all_subsets():
            if coxeter_criterion(I, w, group) != (I <= supp):
                report.fail(f"criterion at I={I}, w={w!r} disagrees with supp={supp}")
    return report


def verify_kl(store: KLStore) -> Report:
    """KL invariants over the full table, plus both routes of the class counts."""
    group = store.group
    report = Report(f"kl {group.cartan_type}")
    try:
        kl_table(store)
    except InternalInconsistency as exc:
        report.fail(str(exc))
        return report
    elements = group.enumerate_group()
    dihedral = group.rank <= 2
    for x in elements:
        xi = x.inverse()
        for y in elements:
            p = kl_polynomial(x, y, store)
            if group.bruhat_leq(x, y) != bool(p):
                report.fail(f"P_{{{x!r},{y!r}}} = {p} disagrees with Bruhat order")
            if p != kl_polynomial(xi, y.inverse(), store):
                report.fail(f"inverse symmetry fails at ({x!r}, {y!r})")
            if dihedral and p and p.coeffs != (1,):
                report.fail(f"rank-2 polynomial P_{{{x!r},{y!r}}} = {p} is not 1")
    counts = 0
    for I in group.all_subsets():
        try:
            counts += group.parabolic_class_count(I)
        except InternalInconsistency as exc:
            report.fail(str(exc))
    if counts != len(elements):
        report.fail(f"class counts sum to {counts}, |W| = {len(elements)}")
    report.note(f"entries={len(store)} |W|={len(elements)}")
    return report
