"""Generators for the Kinoshita-Terasaka, Conway, (2,k)-torus and 4-strand pretzel families.

All diagrams are assembled from vertical twist boxes.  A box with ``p > 0``
half-twists has the strand entering at the top right passing over; ``p < 0``
is its mirror.  KT(r, n) and Conway(r, n) are the pretzel links
``P(r+1, -r, r, -r-1)`` and ``P(r+1, -r, -r-1, r)`` with a clasp of ``2n``
half-twists banding the arc between the second and third boxes to the outer
top arc.  With no clasp twists the band sum is ``N(B1+B2) # N(B3+B4)``, a sum
of two unknots.  The clasp strands are antiparallel and ``n > 0`` gives
positive clasp crossings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import Crossing, PDCode, SkeinTriple, component_diagram, components, pass_through, remove_kinks, smooth_crossing

__all__ = [
    "FamilySpec",
    "FamilySpecError",
    "generate",
    "is_trivial_parameters",
    "symmetry_partner",
    "mirror_partner",
    "twist_region_skein_triple",
    "torus_skein_triple",
    "braid_closure",
    "parse_family_spec",
    "TRIVIAL_R",
]

TRIVIAL_R = frozenset({0, 1, -1, -2})
KINDS = ("KT", "Conway", "Torus2", "Pretzel4")


class FamilySpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        arity = {"KT": 2, "Conway": 2, "Torus2": 1, "Pretzel4": 4}
        if self.kind not in arity:
            raise FamilySpecError(f"unknown family kind {self.kind!r}")
        if len(self.params) != arity[self.kind]:
            raise FamilySpecError(f"{self.kind} takes {arity[self.kind]} parameters, got {len(self.params)}")
        if self.kind == "Torus2" and self.params[0] == 0:
            raise FamilySpecError("Torus2(k) needs k != 0")

    @classmethod
    def kt(cls, r: int, n: int) -> "FamilySpec":
        return cls("KT", (r, n))

    @classmethod
    def conway(cls, r: int, n: int) -> "FamilySpec":
        return cls("Conway", (r, n))

    @classmethod
    def torus2(cls, k: int) -> "FamilySpec":
        return cls("Torus2", (k,))

    @classmethod
    def pretzel4(cls, *p: int) -> "FamilySpec":
        return cls("Pretzel4", p)

    @property
    def r(self) -> int:
        return self.params[0]

    @property
    def n(self) -> int:
        return self.params[1]

    def label(self) -> str:
        return f"{_CLI_NAMES[self.kind]}:{','.join(map(str, self.params))}"

    def __str__(self):
        return f"{self.kind}({', '.join(map(str, self.params))})"


_CLI_NAMES = {"KT": "kt", "Conway": "conway", "Torus2": "torus2", "Pretzel4": "pretzel4"}
_FROM_CLI = {v: k for k, v in _CLI_NAMES.items()}
_SPEC_RE = re.compile(r"^\s*([A-Za-z0-9]+)\s*:\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*$")


def parse_family_spec(text: str) -> FamilySpec:
    """Parse ``kt:r,n``, ``conway:r,n``, ``torus2:k`` or ``pretzel4:p1,p2,p3,p4``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise FamilySpecError(f"cannot parse family spec {text!r}")
    kind = _FROM_CLI.get(m.group(1).lower())
    if kind is None:
        raise FamilySpecError(f"unknown family {m.group(1)!r}; expected one of {sorted(_FROM_CLI)}")
    return FamilySpec(kind, tuple(int(x) for x in m.group(2).split(",")))


# --- tangle builder ---------------------------------------------------------------


class _Builder:
    """Crossings with slots (BL, BR, TR, TL) counterclockwise, glued by edge variables."""

    def __init__(self):
        self.slots: list[list[int]] = []
        self.over_pair: list[int] = []  # 0: slots (0,2) are over; 1: slots (1,3) are over
        self.parent: list[int] = []

    def edge(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def join(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def box(self, p: int) -> tuple[list[int], tuple[int, int, int, int]]:
        """Vertical twist box; returns (crossing indices, ports (NW, NE, SW, SE))."""
        left, right = self.edge(), self.edge()
        nw, ne = left, right
        made = []
        for _ in range(abs(p)):
            bl, br = self.edge(), self.edge()
            self.slots.append([bl, br, right, left])
            # the top-right/bottom-left strand is over for positive twists
            self.over_pair.append(0 if p > 0 else 1)
            made.append(len(self.slots) - 1)
            left, right = bl, br
        return made, (nw, ne, left, right)

    def to_pd(self) -> PDCode:
        n = len(self.slots)
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, sl in enumerate(self.slots):
            for s, e in enumerate(sl):
                occ.setdefault(self.find(e), []).append((i, s))
        for e, where in occ.items():
            if len(where) != 2:
                raise AssertionError(f"edge {e} has {len(where)} ends")
        roots = {self.find(e) for e in range(len(self.parent))}
        loops = len(roots - set(occ))
        label = [[0] * 4 for _ in range(n)]
        incoming = [[False] * 4 for _ in range(n)]
        visited = [[False] * 4 for _ in range(n)]
        counter = 0
        for start in range(n):
            for s0 in (3, 2, 0, 1):
                if visited[start][s0]:
                    continue
                x, s = start, s0
                while not visited[x][s]:
                    visited[x][s] = True
                    incoming[x][s] = True
                    out = (s + 2) % 4
                    visited[x][out] = True
                    counter += 1
                    label[x][out] = counter
                    a, b = occ[self.find(self.slots[x][out])]
                    nx, ns = b if a == (x, out) else a
                    label[nx][ns] = counter
                    x, s = nx, ns
        crossings = []
        for i in range(n):
            under_slots = (1, 3) if self.over_pair[i] == 0 else (0, 2)
            u = under_slots[0] if incoming[i][under_slots[0]] else under_slots[1]
            quad = [label[i][(u + k) % 4] for k in range(4)]
            over_in = [s for s in range(4) if s not in under_slots and incoming[i][s]][0]
            sign = 1 if (over_in - u) % 4 == 3 else -1
            crossings.append(Crossing(*quad, sign))
        return PDCode(tuple(crossings), loops if crossings else max(loops, 1))


# --- family constructions --------------------------------------------------------


def _pretzel_boxes(kind: str, r: int) -> tuple[int, int, int, int]:
    if kind == "KT":
        return (r + 1, -r, r, -r - 1)
    return (r + 1, -r, -r - 1, r)


def _build_clasped(kind: str, r: int, n: int, clasp: bool = True) -> tuple[PDCode, list[int]]:
    """KT/Conway diagram and the indices of its clasp crossings (top to bottom)."""
    b = _Builder()
    ports = [b.box(p)[1] for p in _pretzel_boxes(kind, r)]
    (nw1, ne1, sw1, se1), (nw2, ne2, sw2, se2), (nw3, ne3, sw3, se3), (nw4, ne4, sw4, se4) = ports
    b.join(ne1, nw2)
    b.join(se1, sw2)
    b.join(ne3, nw4)
    b.join(se3, sw4)
    b.join(se2, sw3)
    b.join(sw1, se4)
    if clasp:
        w_idx, (wnw, wne, wsw, wse) = b.box(-2 * n)
        b.join(ne2, wsw)
        b.join(wse, nw3)
        b.join(wnw, nw1)
        b.join(wne, ne4)
    else:
        w_idx = []
        b.join(ne2, nw3)
        b.join(nw1, ne4)
    return b.to_pd(), w_idx


def _build_pretzel(ps) -> PDCode:
    b = _Builder()
    ports = [b.box(p)[1] for p in ps]
    for (_, ne, _, se), (nw, _, sw, _) in zip(ports, ports[1:]):
        b.join(ne, nw)
        b.join(se, sw)
    b.join(ports[0][0], ports[-1][1])
    b.join(ports[0][2], ports[-1][3])
    return b.to_pd()


def _build_torus(k: int) -> PDCode:
    b = _Builder()
    _, (nw, ne, sw, se) = b.box(k)
    b.join(nw, sw)
    b.join(ne, se)
    return b.to_pd()


def braid_closure(word, strands: int) -> PDCode:
    """Closure of a braid word (``+i``/``-i`` for sigma_i^{+-1}, 1-based), strands oriented downward."""
    b = _Builder()
    tops = [b.edge() for _ in range(strands)]
    cur = list(tops)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1 or g == 0:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        _, (nw, ne, sw, se) = b.box(1 if g > 0 else -1)
        b.join(cur[i], nw)
        b.join(cur[i + 1], ne)
        cur[i], cur[i + 1] = sw, se
    for t, c in zip(tops, cur):
        b.join(t, c)
    return b.to_pd()


def generate(spec: FamilySpec) -> PDCode:
    """Oriented PD code for a family member; repeated calls return identical codes."""
    if spec.kind in ("KT", "Conway"):
        pd, _ = _build_clasped(spec.kind, spec.r, spec.n)
    elif spec.kind == "Torus2":
        pd = _build_torus(spec.params[0])
    else:
        pd = _build_pretzel(spec.params)
    return pd.canonical()


def is_trivial_parameters(r: int, n: int) -> bool:
    return r in TRIVIAL_R or n == 0


def _require_clasped(spec: FamilySpec) -> None:
    if spec.kind not in ("KT", "Conway"):
        raise FamilySpecError(f"{spec.kind} has no (r, n) symmetries")


def symmetry_partner(spec: FamilySpec) -> FamilySpec:
    _require_clasped(spec)
    return FamilySpec(spec.kind, (-spec.r - 1, spec.n))


def mirror_partner(spec: FamilySpec) -> FamilySpec:
    _require_clasped(spec)
    return FamilySpec(spec.kind, (spec.r, -spec.n))


def twist_region_skein_triple(kind: str, r: int, n: int) -> SkeinTriple:
    """Skein triple at the top clasp crossing of KT/Conway(r, n), ``n >= 1``.

    ``k_minus`` comes from deleting the top two clasp crossings (a full twist),
    ``k_smooth`` from the oriented smoothing with the leftover kinks undone.
    """
    kind = {"kt": "KT", "conway": "Conway"}.get(str(kind).lower(), kind)
    if kind not in ("KT", "Conway"):
        raise FamilySpecError(f"twist region skein triples exist for KT and Conway, not {kind}")
    if n < 1:
        raise ValueError("n must be >= 1; use the mirror symmetry for n < 0")
    pd, w = _build_clasped(kind, r, n)
    if any(pd.crossings[i].sign != 1 for i in w):
        raise AssertionError("clasp crossings must be positive for n > 0")
    k_minus = pass_through(pd, w[:2])
    k_smooth = remove_kinks(smooth_crossing(pd, w[0]))
    return SkeinTriple(pd.canonical(), k_minus, k_smooth, _pretzel_labels(kind, r, k_smooth), note=f"{kind}({r},{n}) clasp")


def _pretzel_labels(kind: str, r: int, link: PDCode) -> tuple[int, int]:
    """Name the smoothed components: K' has at least as many self-crossings as K''."""
    comps = components(link)
    if len(comps) != 2:
        raise AssertionError(f"{kind}({r}, n) smoothing produced {len(comps)} components")
    sizes = [len(component_diagram(link, i)) for i in range(2)]
    return (0, 1) if sizes[0] >= sizes[1] else (1, 0)


def torus_skein_triple(k: int) -> SkeinTriple:
    """Triple ``(T(2,2k+1), T(2,2k-1), T(2,2k))`` at the top crossing, ``k >= 1``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b = _Builder()
    idx, (nw, ne, sw, se) = b.box(2 * k + 1)
    b.join(nw, sw)
    b.join(ne, se)
    pd = b.to_pd()
    k_minus = pass_through(pd, idx[:2])
    k_smooth = smooth_crossing(pd, idx[0])
    return SkeinTriple(pd.canonical(), k_minus, k_smooth, (0, 1), note=f"T(2,{2 * k + 1}) top crossing")
