"""Invariant suites over a datum: each check returns a named pass/fail line."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .arrangement import act
from .blockspace import (
    BlockSpace,
    bar_vector,
    canonical_signed_basis,
    eta_invariance_check,
    heart_check,
    heart_pairing_check,
    heart_vector,
    positive_basis,
)
from .datum import BlockDatum
from .exactalg import IntLaurent, RatFunc, expand_at_0, in_q_of_v_squared
from .pairing import build_gram, h_value, tau


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class AuditReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _random_ratfunc(rng: random.Random) -> RatFunc:
    def poly() -> IntLaurent:
        return IntLaurent({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 3))})

    num = poly()
    den = poly()
    while den.is_zero():
        den = poly()
    return RatFunc(num, den)


def involution_checks(report: AuditReport, samples: Sequence[RatFunc], where: str) -> None:
    inv = all(f.bar().bar() == f and f.heart().heart() == f for f in samples)
    comm = all(f.bar().heart() == f.heart().bar() for f in samples)
    report.add(f"bar and heart are involutions ({where})", inv)
    report.add(f"bar and heart commute ({where})", comm)


def gram_checks(report: AuditReport, space: BlockSpace, seeds: Sequence[int]) -> None:
    d = space.datum
    g = space.gram
    n = g.size
    report.add("Gram symmetry", all(g.entries[i][j] == g.entries[j][i] for i in range(n) for j in range(n)))

    bad = []
    reps = [c.representative for c in g.chambers]
    for seed in seeds:
        other = build_gram(d, seed=seed)
        reps.extend(c.representative for c in other.chambers)
        if [c.signs for c in other.chambers] != [c.signs for c in g.chambers]:
            bad.append(f"seed {seed}: chamber set differs")
            continue
        for i in range(n):
            for j in range(n):
                if other.entries[i][j] != g.entries[i][j]:
                    bad.append(f"seed {seed}: entry ({i}, {j})")
    report.add(f"Gram independent of representatives ({len(seeds)} seeds)", not bad, "; ".join(bad[:5]))

    report.add("tau(phi, phi) = 0", all(tau(d, p, p) == 0 for p in reps))

    hs = {p: h_value(d, p) for p in reps}
    parity_ok = True
    w_ok = True
    for p in reps[: 3 * n]:
        for w in d.weyl_on_e:
            wp = act(w, p)
            hw = h_value(d, wp)
            if hw != hs[p]:
                w_ok = False
            for q in reps[:n]:
                if (tau(d, q, wp) - hw - hs[q]) % 2:
                    parity_ok = False
    report.add("tau(phi, phi') = h(phi) + h(phi') mod 2", parity_ok)
    report.add("h(w phi) = h(phi)", w_ok)

    heart_ok = True
    for i in range(n):
        for j in range(n):
            hi, hj = hs[reps[i]], hs[reps[j]]
            x = g.entries[i][j] * RatFunc.of(IntLaurent.monomial(hj - hi))
            if not in_q_of_v_squared(x):
                heart_ok = False
    report.add("rescaled Gram entries lie in Q(v^2)", heart_ok)
    report.add("left radical = right radical", space.radical_audit())
    involution_checks(report, [x for row in g.entries for x in row], "Gram entries")


def basis_checks(
    report: AuditReport,
    space: BlockSpace,
    kappas: Sequence[int] | None = None,
    series_order: int = 40,
) -> None:
    try:
        sb = canonical_signed_basis(space)
        pb = positive_basis(sb)
    except (RuntimeError, ArithmeticError) as exc:
        report.add("signed basis", False, str(exc))
        return
    basis = pb.elements
    report.add("signed basis size = rank", len(basis) == space.quotient_dim)
    report.add("basis elements are bar-invariant", all(bar_vector(b) == b for b in basis))
    gens_ok = all(bar_vector(space.generator_vector(k)) == space.generator_vector(k) for k in range(len(space.generators)))
    report.add("bar fixes every generator", gens_ok)
    vecs = [space.generator_vector(k) for k in range(len(space.generators))] + list(basis)
    report.add("heart is an involution of the lattice", all(heart_vector(heart_vector(x)) == x for x in vecs))

    nonneg = True
    almost = True
    for i, b in enumerate(basis):
        for j, c in enumerate(basis):
            s = expand_at_0(space.pair(b, c), series_order).as_dict()
            if i == j:
                if s.get(0) != 1 or any(e < 0 or x < 0 or x.denominator != 1 for e, x in s.items()):
                    nonneg = False
            else:
                if any(e <= 0 or x.denominator != 1 for e, x in s.items()):
                    almost = False
    report.add(f"(b:b) in 1 + vN[[v]] (to order {series_order})", nonneg)
    report.add("(b:b') in delta + vZ[[v]]", almost)
    report.add("(b^heart : b'^heart) = heart((b:b'))", heart_pairing_check(space, basis))
    if kappas is not None:
        res = heart_check(space, basis, kappas)
        report.add("heart(b) = (-1)^kappa(b) b", all(res), "" if all(res) else f"failed at {[i for i, r in enumerate(res) if not r]}")


def run_audit(
    d: BlockDatum,
    seed: int = 1,
    extra_seeds: Sequence[int] = (2, 3),
    eta_alt: int | None = None,
    kappas: Sequence[int] | None = None,
    series_order: int = 40,
    jobs: int = 1,
    with_basis: bool = True,
) -> AuditReport:
    report = AuditReport()
    space = BlockSpace(d, build_gram(d, seed=seed, jobs=jobs), seed=seed)
    involution_checks(report, [_random_ratfunc(random.Random(f"{seed}:{k}")) for k in range(20)], "random samples")
    gram_checks(report, space, extra_seeds)
    if with_basis:
        basis_checks(report, space, kappas, series_order)
    if eta_alt is not None:
        eta = eta_invariance_check(d, eta_alt, seed, with_basis)
        report.add(f"eta-invariance ({d.eta} vs {eta_alt})", eta.ok, str(eta.to_json()))
    return report
