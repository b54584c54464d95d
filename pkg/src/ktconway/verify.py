"""Property suites over (r, n) grids, shared by the ``verify`` command and the tests.

Every case reports a reproducible identifier so a failure can be rerun with
``ktconway invariants <family>:<r>,<n>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterator

from .diagram import mirror
from .families import FamilySpec, generate, mirror_partner, symmetry_partner, torus_skein_triple, twist_region_skein_triple
from .invariants import (
    alexander,
    conway,
    hoste_check,
    jones,
    v3_closed_form,
    v3_from_jones,
    w3_from_jones,
    w3_skein_step,
)

SUITES = ("lemma-v3", "hoste", "skein-step", "mutation", "symmetry", "alexander")
FAMILIES = ("KT", "Conway")


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite} {self.case}" + (f": {self.detail}" if self.detail else "")


def _spec(kind, r, n):
    return FamilySpec(kind, (r, n))


def lemma_v3_case(r: int, n: int) -> CaseResult:
    want = v3_closed_form(r, n)
    got = {k: v3_from_jones(jones(generate(_spec(k, r, n)))) for k in FAMILIES}
    ok = all(v == want for v in got.values())
    detail = "" if ok else f"v3(kt:{r},{n})={got['KT']} v3(conway:{r},{n})={got['Conway']} expected {want}"
    return CaseResult("lemma-v3", f"r={r} n={n}", ok, detail)


def mutation_case(r: int, n: int) -> CaseResult:
    vk = jones(generate(_spec("KT", r, n)))
    vc = jones(generate(_spec("Conway", r, n)))
    ok = vk == vc
    return CaseResult("mutation", f"r={r} n={n}", ok, "" if ok else f"V(kt:{r},{n})={vk} V(conway:{r},{n})={vc}")


def symmetry_case(r: int, n: int) -> CaseResult:
    problems = []
    for kind in FAMILIES:
        spec = _spec(kind, r, n)
        pd = generate(spec)
        v = jones(pd)
        nabla = conway(pd).full
        partner = generate(symmetry_partner(spec))
        if jones(partner) != v or conway(partner).full != nabla:
            problems.append(f"{spec.label()} differs from {symmetry_partner(spec).label()}")
        mp = generate(mirror_partner(spec))
        vm = jones(mp)
        if vm != v.invert_variable():
            problems.append(f"V({mirror_partner(spec).label()}) != V({spec.label()})(1/q)")
        if v3_from_jones(vm) != -v3_from_jones(v):
            problems.append(f"v3 does not negate under {spec.label()} -> {mirror_partner(spec).label()}")
        if conway(mp).full != nabla:
            problems.append(f"Conway polynomial changes under mirror of {spec.label()}")
        if jones(mirror(pd)) != v.invert_variable():
            problems.append(f"diagram mirror of {spec.label()} breaks q -> 1/q")
    return CaseResult("symmetry", f"r={r} n={n}", not problems, "; ".join(problems))


def hoste_case(kind: str, r: int, n: int) -> CaseResult:
    triple = twist_region_skein_triple(kind, r, n)
    ok = hoste_check(triple)
    return CaseResult("hoste", f"{kind.lower()}:{r},{n}", ok, "" if ok else "lk(K', K'') != a2(K+) - a2(K-)")


def hoste_torus_case(k: int) -> CaseResult:
    ok = hoste_check(torus_skein_triple(k))
    return CaseResult("hoste", f"torus k={k}", ok, "" if ok else f"lk != a2(T(2,{2 * k + 1})) - a2(T(2,{2 * k - 1}))")


def skein_step_case(kind: str, r: int, n: int) -> CaseResult:
    triple = twist_region_skein_triple(kind, r, n)
    predicted = w3_skein_step(triple)
    actual = w3_from_jones(jones(triple.k_plus)) - w3_from_jones(jones(triple.k_minus))
    direct = w3_from_jones(jones(generate(_spec(kind, r, n)))) - w3_from_jones(jones(generate(_spec(kind, r, n - 1))))
    ok = predicted == actual == direct
    detail = "" if ok else f"predicted {predicted}, from Jones {actual}, from generated pair {direct}"
    return CaseResult("skein-step", f"{kind.lower()}:{r},{n}", ok, detail)


def alexander_case(kind: str, r: int, n: int) -> CaseResult:
    pd = generate(_spec(kind, r, n))
    delta = alexander(pd)
    ok = delta == 1 and conway(pd).a2 == 0 and conway(pd).a4 == 0
    return CaseResult("alexander", f"{kind.lower()}:{r},{n}", ok, "" if ok else f"Delta = {delta}")


def cases(suite: str, r_range: range, n_range: range) -> Iterator[Callable[[], CaseResult]]:
    """Yield zero-argument callables, one per case, in deterministic order."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    grid = [(r, n) for r in r_range for n in n_range]
    if suite == "lemma-v3":
        for r, n in grid:
            yield partial(lemma_v3_case, r, n)
    elif suite == "mutation":
        for r, n in grid:
            yield partial(mutation_case, r, n)
    elif suite == "symmetry":
        for r, n in grid:
            yield partial(symmetry_case, r, n)
    elif suite == "alexander":
        for kind in FAMILIES:
            for r, n in grid:
                yield partial(alexander_case, kind, r, n)
    elif suite in ("hoste", "skein-step"):
        fn = hoste_case if suite == "hoste" else skein_step_case
        # the clasp triple needs n >= 1; negative n is its mirror image
        for kind in ("Conway", "KT"):
            for r, n in grid:
                if n >= 1:
                    yield partial(fn, kind, r, n)
        if suite == "hoste":
            for k in range(1, 9):
                yield partial(hoste_torus_case, k)


def _run(fn):
    return fn()


def run_suite(suite: str, r_range: range, n_range: range, jobs: int = 1) -> list[CaseResult]:
    todo = list(cases(suite, r_range, n_range))
    if jobs <= 1:
        return [fn() for fn in todo]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, todo))
