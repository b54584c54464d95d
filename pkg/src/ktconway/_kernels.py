"""Hot loops of the Kauffman bracket contraction.

The bracket is evaluated by adding crossings one at a time.  After each step
the processed part of the diagram is a tangle whose open arcs form the
*frontier*; a state is a perfect matching of frontier positions (how the
smoothed tangle connects its boundary), weighted by a Laurent polynomial in
``A`` stored densely as an int row.  Identical matchings are merged after
every step, so twist regions cost linear work instead of ``2**k`` states.

Two interchangeable step kernels exist: a numba ``@njit`` loop over states
and a vectorized numpy version.  ``KTCONWAY_DISABLE_NUMBA=1`` selects numpy;
diagrams whose coefficients could overflow int64 always take the numpy path
with Python-int (object) rows.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import numpy as np

from . import _config

try:  # pragma: no cover - import guard
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

# |coefficient sum| <= 2**(2c+1), so int64 rows are exact up to this many crossings
INT64_SAFE_CROSSINGS = 30
# frontier matchings are packed 4 bits per position into one uint64 key
PACK_LIMIT = 16

_backend_override: str | None = None


def active_backend() -> str:
    if _backend_override is not None:
        return _backend_override
    return "numba" if HAVE_NUMBA and _config.numba_requested() else "numpy"


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force ``"numba"`` or ``"numpy"`` (used by tests and benchmarks)."""
    global _backend_override
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    prev = _backend_override
    _backend_override = name
    try:
        yield
    finally:
        _backend_override = prev


class StateLimitExceeded(RuntimeError):
    pass


@dataclass
class Step:
    m_old: int
    glue: np.ndarray  # (g, 2) positions in the extended frontier
    keep: np.ndarray  # surviving positions, in order
    remap: np.ndarray  # extended position -> new position (-1 when glued away)


def contraction_order(quads: list[tuple[int, int, int, int]]) -> list[int]:
    """Greedy order keeping the frontier small: next crossing shares the most open arcs."""
    n = len(quads)
    if n == 0:
        return []
    where: dict[int, list[int]] = {}
    for i, q in enumerate(quads):
        for x in q:
            where.setdefault(x, []).append(i)
    done = [False] * n
    open_count = {}
    order = []
    frontier: set[int] = set()
    for _ in range(n):
        best, best_score = -1, None
        candidates = {j for x in frontier for j in where[x] if not done[j]} or {min(i for i in range(n) if not done[i])}
        for j in candidates:
            shared = sum(1 for x in quads[j] if x in frontier)
            score = (-shared, j)
            if best_score is None or score < best_score:
                best, best_score = j, score
        done[best] = True
        order.append(best)
        for x in quads[best]:
            open_count[x] = open_count.get(x, 0) + 1
            if open_count[x] == 2:
                frontier.discard(x)
            else:
                frontier.add(x)
    return order


def plan(quads: list[tuple[int, int, int, int]], order: list[int]) -> list[Step]:
    frontier: list[int] = []
    steps = []
    for idx in order:
        ext = frontier + list(quads[idx])
        m_old = len(frontier)
        seen: dict[int, int] = {}
        glue = []
        for pos, x in enumerate(ext):
            if x in seen:
                glue.append((seen.pop(x), pos))
            else:
                seen[x] = pos
        dead = {p for pair in glue for p in pair}
        keep = [p for p in range(len(ext)) if p not in dead]
        remap = np.full(len(ext), -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        steps.append(Step(m_old, np.array(glue, dtype=np.int64).reshape(-1, 2), np.array(keep, dtype=np.int64), remap))
        frontier = [ext[p] for p in keep]
    if frontier:
        raise ValueError(f"arcs {frontier} never closed: PD code is not a closed diagram")
    return steps


# --- numpy kernel -------------------------------------------------------------


def _times_loop(rows: np.ndarray) -> np.ndarray:
    # multiply by d = -A^2 - A^-2 on the dense exponent axis
    return -np.roll(rows, 2, axis=1) - np.roll(rows, -2, axis=1)


def step_numpy(P, polys, m_old, glue, keep, remap):
    R = P.shape[0]
    m = m_old
    ext = np.empty((2 * R, m + 4), dtype=np.int64)
    ext[:R, :m] = P
    ext[R:, :m] = P
    # A-smoothing joins slots (0,1),(2,3); A^-1-smoothing joins (0,3),(1,2)
    ext[:R, m], ext[:R, m + 1], ext[:R, m + 2], ext[:R, m + 3] = m + 1, m, m + 3, m + 2
    ext[R:, m], ext[R:, m + 1], ext[R:, m + 2], ext[R:, m + 3] = m + 3, m + 2, m + 1, m
    pol = np.concatenate([np.roll(polys, 1, axis=1), np.roll(polys, -1, axis=1)])
    loops = np.zeros(2 * R, dtype=np.int64)
    rows = np.arange(2 * R)
    for i, j in glue:
        pi = ext[:, i].copy()
        pj = ext[:, j].copy()
        closed = pi == j
        op = ~closed
        r = rows[op]
        ext[r, pi[op]] = pj[op]
        ext[r, pj[op]] = pi[op]
        loops += closed
    for k in range(1, int(loops.max(initial=0)) + 1):
        sel = loops >= k
        pol[sel] = _times_loop(pol[sel])
    return remap[ext[:, keep]], pol


# --- numba kernel ---------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _step_numba(P, polys, m_old, glue, keep, remap):  # pragma: no cover - compiled
        R = P.shape[0]
        L = polys.shape[1]
        m = m_old
        width = m + 4
        out_P = np.empty((2 * R, keep.shape[0]), dtype=np.int64)
        out_pol = np.zeros((2 * R, L), dtype=np.int64)
        row = np.empty(width, dtype=np.int64)
        tmp = np.empty(L, dtype=np.int64)
        for half in range(2):
            shift = 1 if half == 0 else -1
            for r in range(R):
                for k in range(m):
                    row[k] = P[r, k]
                if half == 0:
                    row[m] = m + 1
                    row[m + 1] = m
                    row[m + 2] = m + 3
                    row[m + 3] = m + 2
                else:
                    row[m] = m + 3
                    row[m + 3] = m
                    row[m + 1] = m + 2
                    row[m + 2] = m + 1
                loops = 0
                for g in range(glue.shape[0]):
                    i = glue[g, 0]
                    j = glue[g, 1]
                    pi = row[i]
                    pj = row[j]
                    if pi == j:
                        loops += 1
                    else:
                        row[pi] = pj
                        row[pj] = pi
                o = half * R + r
                for k in range(keep.shape[0]):
                    out_P[o, k] = remap[row[keep[k]]]
                for e in range(L):
                    src = e - shift
                    if 0 <= src < L:
                        out_pol[o, e] = polys[r, src]
                for _ in range(loops):
                    for e in range(L):
                        acc = 0
                        if e - 2 >= 0:
                            acc -= out_pol[o, e - 2]
                        if e + 2 < L:
                            acc -= out_pol[o, e + 2]
                        tmp[e] = acc
                    for e in range(L):
                        out_pol[o, e] = tmp[e]
        return out_P, out_pol

else:  # pragma: no cover
    _step_numba = None


# --- state merging ----------------------------------------------------------------


def merge_states(P: np.ndarray, pol: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sum weights of identical matchings and drop states whose weight cancelled."""
    live = (pol != 0).any(axis=1)
    P = P[live]
    pol = pol[live]
    if P.shape[0] == 0:
        return P, pol
    m = P.shape[1]
    if m == 0:
        return P[:1], pol.sum(axis=0, keepdims=True)
    if m <= PACK_LIMIT:
        shifts = (np.arange(m, dtype=np.uint64) * np.uint64(4))
        keys = (P.astype(np.uint64) << shifts).sum(axis=1, dtype=np.uint64)
        _, first, inv = np.unique(keys, return_index=True, return_inverse=True)
    else:
        _, first, inv = np.unique(P, axis=0, return_index=True, return_inverse=True)
    inv = inv.ravel()
    order = np.argsort(inv, kind="stable")
    counts = np.bincount(inv)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    merged = np.add.reduceat(pol[order], starts, axis=0)
    return P[first], merged


def contract(quads: list[tuple[int, int, int, int]], backend: str | None = None) -> tuple[np.ndarray, int]:
    """Run the contraction; returns ``(dense coefficients, offset)`` of ``sum A^k d^loops``.

    The caller divides by one factor of ``d`` to obtain the bracket.
    """
    n = len(quads)
    offset = 3 * n + 4
    L = 2 * offset + 1
    exact_objects = n > INT64_SAFE_CROSSINGS
    backend = backend or active_backend()
    if exact_objects:
        backend = "numpy"
    dtype = object if exact_objects else np.int64
    P = np.zeros((1, 0), dtype=np.int64)
    pol = np.zeros((1, L), dtype=dtype)
    pol[0, offset] = 1
    for st in plan(quads, contraction_order(quads)):
        if backend == "numba":
            P, pol = _step_numba(P, pol, st.m_old, st.glue, st.keep, st.remap)
        else:
            P, pol = step_numpy(P, pol, st.m_old, st.glue, st.keep, st.remap)
        P, pol = merge_states(P, pol)
        if P.shape[0] > _config.STATE_CAP:
            raise StateLimitExceeded(f"{P.shape[0]} boundary states exceed the cap of {_config.STATE_CAP}")
        if P.shape[0] == 0:
            return np.zeros(L, dtype=dtype), offset
    return pol.sum(axis=0), offset
