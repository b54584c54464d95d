"""Cosmetic-surgery obstructions assembled from the computed invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional, Union

from .diagram import PDCode, components, format_pd
from .families import FamilySpec, FamilySpecError, generate, is_trivial_parameters, parse_family_spec
from .invariants import alexander, conway, finite_type, jones
from .poly import INF, ExtendedRational, LaurentPoly, format_extended, kth_derivative_at_one, parse_extended

__all__ = [
    "Verdict",
    "InvariantReport",
    "InconsistencyError",
    "big_o_invariant",
    "chirally_cosmetic_verdict",
    "purely_cosmetic_verdict",
    "analyze",
    "analyze_family",
    "verdicts_from_record",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("name", "r", "n", "a2", "a4", "v2", "v3", "w3", "big_o", "chirally", "purely", "jones", "alexander")

NOTE = "verdicts are one-directional: OBSTRUCTED rules surgeries out, INCONCLUSIVE only means the test does not apply"


class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self):
        return self.value


class InconsistencyError(AssertionError):
    """Computed invariants contradict an identity that must always hold."""


def big_o_invariant(a2: int, a4: int, v3: Fraction) -> ExtendedRational:
    """``|7 a2^2 - a2 - 10 a4| / |4 v3|``, or infinity when ``v3 == 0``."""
    v3 = Fraction(v3)
    if v3 == 0:
        return INF
    return abs(Fraction(7 * a2 * a2 - a2 - 10 * a4) / (4 * v3))


def chirally_cosmetic_verdict(big_o: ExtendedRational) -> Verdict:
    return Verdict.OBSTRUCTED if big_o <= 2 else Verdict.INCONCLUSIVE


def purely_cosmetic_verdict(v2: Fraction, v3: Fraction) -> Verdict:
    return Verdict.OBSTRUCTED if v2 != 0 or v3 != 0 else Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class InvariantReport:
    name: str
    source: str
    a2: int
    a4: int
    v2: Fraction
    v3: Fraction
    w3: Fraction
    jones: LaurentPoly
    alexander: LaurentPoly
    conway: LaurentPoly
    big_o: ExtendedRational
    chirally_obstructed: bool
    purely_obstructed: bool
    is_unknot_parameters: Optional[bool] = None
    triviality_consistent: Optional[bool] = None

    @property
    def chirally(self) -> Verdict:
        return Verdict.OBSTRUCTED if self.chirally_obstructed else Verdict.INCONCLUSIVE

    @property
    def purely(self) -> Verdict:
        return Verdict.OBSTRUCTED if self.purely_obstructed else Verdict.INCONCLUSIVE

    @property
    def family(self) -> Optional[FamilySpec]:
        try:
            return parse_family_spec(self.source)
        except FamilySpecError:
            return None

    def to_record(self) -> dict:
        """Flat JSON-ready mapping with exactly the report's field names."""
        rec = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, LaurentPoly):
                value = value.render()
            elif isinstance(value, Fraction):
                value = str(value)
            elif f.name == "big_o":
                value = format_extended(value)
            rec[f.name] = value
        return rec

    def csv_row(self) -> dict:
        spec = self.family
        r = n = ""
        if spec is not None and spec.kind in ("KT", "Conway"):
            r, n = spec.r, spec.n
        return {
            "name": self.name,
            "r": r,
            "n": n,
            "a2": self.a2,
            "a4": self.a4,
            "v2": str(self.v2),
            "v3": str(self.v3),
            "w3": str(self.w3),
            "big_o": format_extended(self.big_o),
            "chirally": str(self.chirally),
            "purely": str(self.purely),
            "jones": self.jones.render(),
            "alexander": self.alexander.render(),
        }

    def render_text(self) -> str:
        rec = self.to_record()
        width = max(len(k) for k in rec)
        lines = [f"{k.ljust(width)}  {'' if v is None else v}" for k, v in rec.items()]
        lines.append(f"{'chirally'.ljust(width)}  {self.chirally}")
        lines.append(f"{'purely'.ljust(width)}  {self.purely}")
        lines.append(f"note: {NOTE}")
        return "\n".join(lines)


def verdicts_from_record(rec: dict) -> tuple[Verdict, Verdict]:
    """Recompute both verdicts from a serialized report."""
    big_o = parse_extended(str(rec["big_o"]))
    return (
        chirally_cosmetic_verdict(big_o),
        purely_cosmetic_verdict(Fraction(str(rec["v2"])), Fraction(str(rec["v3"]))),
    )


def analyze(pd: PDCode, label: str, source: Union[FamilySpec, str, None] = None) -> InvariantReport:
    """Compute every invariant and both verdicts for a knot diagram."""
    if len(components(pd)) != 1:
        raise ValueError(f"{label}: expected a knot, got {len(components(pd))} components")
    v = jones(pd)
    if v.at_one() != 1 or kth_derivative_at_one(v, 1) != 0:
        raise InconsistencyError(f"{label}: Jones polynomial {v} fails V(1) = 1, V'(1) = 0")
    delta = alexander(pd)
    cw = conway(pd)
    ft = finite_type(pd)
    if ft.v2 != cw.a2:
        raise InconsistencyError(f"{label}: v2 {ft.v2} != a2 {cw.a2}")
    big_o = big_o_invariant(cw.a2, cw.a4, ft.v3)
    trivial = consistent = None
    if isinstance(source, FamilySpec):
        src = source.label()
        if source.kind in ("KT", "Conway"):
            trivial = is_trivial_parameters(source.r, source.n)
            consistent = (ft.v3 == 0) == trivial
    elif source is None:
        src = format_pd(pd) if pd.crossings else "PD[]"
    else:
        src = str(source)
    report = InvariantReport(
        name=label,
        source=src,
        a2=cw.a2,
        a4=cw.a4,
        v2=ft.v2,
        v3=ft.v3,
        w3=ft.w3,
        jones=v,
        alexander=delta,
        conway=cw.full,
        big_o=big_o,
        chirally_obstructed=chirally_cosmetic_verdict(big_o) is Verdict.OBSTRUCTED,
        purely_obstructed=purely_cosmetic_verdict(ft.v2, ft.v3) is Verdict.OBSTRUCTED,
        is_unknot_parameters=trivial,
        triviality_consistent=consistent,
    )
    if report.w3 != -2 * report.v3:
        raise InconsistencyError(f"{label}: w3 != -2 v3")
    return report


def analyze_family(spec: FamilySpec, label: str | None = None) -> InvariantReport:
    return analyze(generate(spec), label or spec.label(), spec)
