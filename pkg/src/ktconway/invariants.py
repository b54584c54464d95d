"""Polynomial and finite-type invariants computed from PD codes."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import _config, _kernels
from .diagram import (
    InvalidDiagram,
    PDCode,
    SkeinTriple,
    components,
    linking_number,
    validate,
    writhe,
)
from .poly import LaurentPoly, alexander_to_conway, kth_derivative_at_one, substitute_power

__all__ = [
    "ResourceLimitError",
    "FiniteTypeValues",
    "ConwayCoefficients",
    "LOOP",
    "kauffman_bracket",
    "bracket_state_sum",
    "jones",
    "alexander",
    "alexander_matrix",
    "bareiss_det",
    "conway",
    "finite_type",
    "v3_from_jones",
    "w3_from_jones",
    "v3_closed_form",
    "a2_torus_closed_form",
    "w3_skein_step",
    "hoste_check",
    "bracket_backend",
]

LOOP = LaurentPoly("A", {2: -1, -2: -1})


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""


@dataclass(frozen=True)
class FiniteTypeValues:
    v2: Fraction
    v3: Fraction
    w3: Fraction

    def __post_init__(self):
        if self.w3 != -2 * self.v3:
            raise AssertionError(f"w3 = {self.w3} but -2*v3 = {-2 * self.v3}")


@dataclass(frozen=True)
class ConwayCoefficients:
    a2: int
    a4: int
    full: LaurentPoly


def _require(pd: PDCode) -> None:
    problems = validate(pd)
    if problems:
        raise InvalidDiagram("; ".join(problems))


# --- Kauffman bracket / Jones -------------------------------------------------


def bracket_state_sum(pd: PDCode) -> LaurentPoly:
    """Brute-force sum over all ``2**n`` smoothings; the independent check for small diagrams."""
    _require(pd)
    n = len(pd.crossings)
    if n > _config.NAIVE_CROSSING_CAP:
        raise ResourceLimitError(f"state sum over {n} crossings exceeds the naive cap of {_config.NAIVE_CROSSING_CAP}")
    if n == 0:
        return LOOP ** (pd.free_loops - 1)
    labels = {x: k for k, x in enumerate(pd.arcs)}
    total: dict[int, int] = {}
    loop_powers: dict[int, LaurentPoly] = {}
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def join(x, y):
            parent[find(x)] = find(y)

        a_count = 0
        for i, cr in enumerate(pd.crossings):
            a, b, c, d = (labels[x] for x in cr.arcs)
            if state >> i & 1:
                join(a, d)
                join(b, c)
            else:
                a_count += 1
                join(a, b)
                join(c, d)
        loops = sum(1 for x in range(len(labels)) if find(x) == x) + pd.free_loops
        exp = a_count - (n - a_count)
        key = (exp, loops)
        total[key] = total.get(key, 0) + 1
    result = LaurentPoly("A")
    for (exp, loops), mult in total.items():
        if loops not in loop_powers:
            loop_powers[loops] = LOOP ** (loops - 1)
        result = result + mult * loop_powers[loops].shift(exp)
    return result


@functools.lru_cache(maxsize=4096)
def kauffman_bracket(pd: PDCode, method: str = "auto") -> LaurentPoly:
    """Kauffman bracket ``<D>`` in ``A`` with ``<O> = 1`` and loop value ``-A^2 - A^-2``.

    ``method`` is ``"contract"`` (boundary-state contraction), ``"naive"``
    (full state sum, at most 18 crossings) or ``"auto"``.
    """
    _require(pd)
    n = len(pd.crossings)
    cap = _config.crossing_cap()
    if n > cap:
        raise ResourceLimitError(f"diagram has {n} crossings, above the bracket cap of {cap} (set KNOT_CROSSING_CAP)")
    if method == "naive":
        return bracket_state_sum(pd)
    if method not in ("auto", "contract"):
        raise ValueError(f"unknown bracket method {method!r}")
    if n == 0:
        return LOOP ** (pd.free_loops - 1)
    try:
        coeffs, offset = _kernels.contract([cr.arcs for cr in pd.crossings])
    except _kernels.StateLimitExceeded as exc:
        raise ResourceLimitError(str(exc)) from exc
    raw = LaurentPoly("A", {e - offset: int(c) for e, c in enumerate(coeffs) if c})
    raw = raw * LOOP ** pd.free_loops
    return raw.divmod_exact(LOOP)


@functools.lru_cache(maxsize=4096)
def jones(pd: PDCode) -> LaurentPoly:
    """Jones polynomial in ``q`` (``q = A^-4``), normalized so the unknot gives 1."""
    w = writhe(pd)
    f = kauffman_bracket(pd) * LaurentPoly("A", {-3 * w: -1 if w % 2 else 1})
    return substitute_power(f, "q", -4)


def v3_from_jones(v: LaurentPoly) -> Fraction:
    return -kth_derivative_at_one(v, 3) / 144 - kth_derivative_at_one(v, 2) / 48


def w3_from_jones(v: LaurentPoly) -> Fraction:
    return kth_derivative_at_one(v, 3) / 72 + kth_derivative_at_one(v, 2) / 24


# --- Alexander / Conway -------------------------------------------------------------


def alexander_matrix(pd: PDCode) -> list[list[LaurentPoly]]:
    """Fox-calculus matrix of the Wirtinger presentation (rows: crossings, columns: over-strands)."""
    parent = {x: x for x in pd.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in pd.crossings:
        i, o = cr.over
        ri, ro = find(i), find(o)
        if ri != ro:
            parent[max(ri, ro)] = min(ri, ro)
    gens = sorted({find(x) for x in pd.arcs})
    col = {g: k for k, g in enumerate(gens)}
    zero = LaurentPoly("t")
    one_minus_t = LaurentPoly("t", {0: 1, 1: -1})
    t = LaurentPoly("t", {1: 1})
    rows = []
    for cr in pd.crossings:
        row = [zero] * len(gens)
        u_in, u_out = cr.under
        k = col[find(cr.b)]
        i = col[find(u_in)]
        j = col[find(u_out)]
        if cr.sign < 0:
            i, j = j, i
        row[k] = row[k] + one_minus_t
        row[i] = row[i] + t
        row[j] = row[j] - 1
        rows.append(row)
    return rows


def bareiss_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant over the Laurent polynomial ring."""
    n = len(matrix)
    if n == 0:
        return LaurentPoly("t", {0: 1})
    m = [list(row) for row in matrix]
    var = m[0][0].var
    sign = 1
    prev = LaurentPoly(var, {0: 1})
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly(var)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pivot - mik * m[k][j]
                m[i][j] = num.divmod_exact(prev)
        prev = pivot
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _normalize_alexander(det: LaurentPoly) -> LaurentPoly:
    if det.is_zero():
        raise ArithmeticError("Alexander determinant vanished")
    lo, hi = det.min_exp, det.max_exp
    if (lo + hi) % 2:
        raise ArithmeticError(f"determinant {det} cannot be made symmetric")
    sym = det.shift(-(lo + hi) // 2)
    value = sym.at_one()
    if abs(value) != 1:
        raise ArithmeticError(f"|Delta(1)| = {abs(value)} != 1 for {det}")
    sym = sym if value > 0 else -sym
    if not sym.is_symmetric():
        raise ArithmeticError(f"normalized Alexander polynomial {sym} is not symmetric")
    return sym


@functools.lru_cache(maxsize=4096)
def alexander(pd: PDCode) -> LaurentPoly:
    """Normalized Alexander polynomial of a knot: symmetric with ``Delta(1) = 1``."""
    comps = components(pd)
    if len(comps) != 1:
        raise ValueError(f"Alexander polynomial is computed for knots only ({len(comps)} components given)")
    if not pd.crossings:
        return LaurentPoly("t", {0: 1})
    mat = alexander_matrix(pd)
    minor = [row[:-1] for row in mat[:-1]]
    return _normalize_alexander(bareiss_det(minor))


def conway(pd: PDCode) -> ConwayCoefficients:
    nabla = alexander_to_conway(alexander(pd))
    return ConwayCoefficients(nabla.coeff(2), nabla.coeff(4), nabla)


def finite_type(pd: PDCode) -> FiniteTypeValues:
    v = jones(pd)
    return FiniteTypeValues(Fraction(conway(pd).a2), v3_from_jones(v), w3_from_jones(v))


# --- closed forms and skein identities --------------------------------------------------


def v3_closed_form(r: int, n: int) -> Fraction:
    k = r // 2
    return Fraction(-n * k * (k + 1), 4)


def a2_torus_closed_form(k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    return k * (k + 1) // 2


def _triple_data(triple: SkeinTriple):
    comps = components(triple.k_smooth)
    if len(comps) != 2:
        raise ValueError(f"smoothed link has {len(comps)} components, expected 2")
    for pd in (triple.k_plus, triple.k_minus):
        if len(components(pd)) != 1:
            raise ValueError("K+ and K- must be knots")
    k1, k2 = triple.smooth_components()
    lk = linking_number(triple.k_smooth, *triple.labels)
    return k1, k2, lk


def w3_skein_step(triple: SkeinTriple) -> Fraction:
    """Predicted ``w3(K+) - w3(K-)`` from a2 values and the linking number of the smoothing."""
    k1, k2, lk = _triple_data(triple)
    a2 = lambda pd: conway(pd).a2  # noqa: E731
    return Fraction(a2(k1) + a2(k2), 2) - Fraction(a2(triple.k_plus) + a2(triple.k_minus) + lk * lk, 4)


def hoste_check(triple: SkeinTriple) -> bool:
    """``lk(K', K'') == a2(K+) - a2(K-)``."""
    _, _, lk = _triple_data(triple)
    return lk == conway(triple.k_plus).a2 - conway(triple.k_minus).a2


def bracket_backend() -> str:
    return _kernels.active_backend()

