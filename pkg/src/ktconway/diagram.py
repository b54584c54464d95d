"""Oriented planar diagram (PD) codes.

A crossing ``X(a, b, c, d)`` lists its four arcs counterclockwise starting
from the incoming under-strand, so the under-strand runs ``a -> c``.  The
over-strand runs ``d -> b`` at a positive crossing and ``b -> d`` at a
negative one.  Crossingless components are carried as a count of free loops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Crossing",
    "PDCode",
    "SkeinTriple",
    "InvalidDiagram",
    "PDParseError",
    "validate",
    "components",
    "writhe",
    "linking_number",
    "mirror",
    "connected_sum",
    "split_union",
    "change_crossing",
    "smooth_crossing",
    "pass_through",
    "remove_kinks",
    "component_diagram",
    "skein_triple_at",
    "parse_pd",
    "parse_pd_line",
    "format_pd",
]


class InvalidDiagram(ValueError):
    """Raised when an operation receives a PD code that fails validation."""


class PDParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, order=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign}")

    @property
    def arcs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def under(self) -> tuple[int, int]:
        """(incoming, outgoing) arcs of the under-strand."""
        return (self.a, self.c)

    @property
    def over(self) -> tuple[int, int]:
        """(incoming, outgoing) arcs of the over-strand."""
        return (self.d, self.b) if self.sign > 0 else (self.b, self.d)

    def relabel(self, mapping) -> "Crossing":
        return Crossing(mapping[self.a], mapping[self.b], mapping[self.c], mapping[self.d], self.sign)

    def flipped(self) -> "Crossing":
        """Same projection with over and under exchanged."""
        if self.sign > 0:
            return Crossing(self.d, self.a, self.b, self.c, -1)
        return Crossing(self.b, self.c, self.d, self.a, 1)

    def __str__(self):
        return f"X({self.a},{self.b},{self.c},{self.d})"


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))

    @classmethod
    def unknot(cls) -> "PDCode":
        return cls((), 1)

    @classmethod
    def from_tuples(cls, quads: Iterable[Sequence[int]], signs: Sequence[int] | None = None) -> "PDCode":
        """Build from ``(a, b, c, d)`` tuples, inferring over-strand directions when ``signs`` is omitted."""
        quads = [tuple(int(x) for x in q) for q in quads]
        if signs is None:
            signs = _infer_signs(quads)
        pd = cls(tuple(Crossing(*q, s) for q, s in zip(quads, signs)))
        return pd if pd.crossings else cls.unknot()

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> list[int]:
        return sorted({x for cr in self.crossings for x in cr.arcs})

    @property
    def successor(self) -> dict[int, int]:
        """Arc -> next arc along its strand."""
        nxt = {}
        for cr in self.crossings:
            for i, o in (cr.under, cr.over):
                nxt[i] = o
        return nxt

    def num_components(self) -> int:
        return len(components(self))

    def is_knot(self) -> bool:
        return self.num_components() == 1

    def canonical(self) -> "PDCode":
        """Arcs renumbered 1..2n along components, crossings sorted."""
        if not self.crossings:
            return PDCode((), self.free_loops)
        nxt = self.successor
        mapping = {}
        label = 1
        for start in sorted(nxt):
            if start in mapping:
                continue
            x = start
            while x not in mapping:
                mapping[x] = label
                label += 1
                x = nxt[x]
        return PDCode(tuple(sorted(cr.relabel(mapping) for cr in self.crossings)), self.free_loops)

    def same_diagram(self, other: "PDCode") -> bool:
        return self.canonical() == other.canonical()

    def to_text(self, name: str | None = None) -> str:
        return format_pd(self, name)


# --- validation -----------------------------------------------------------


def validate(pd: PDCode) -> list[str]:
    """Return every structural problem found in ``pd`` (empty when valid)."""
    problems = []
    if pd.free_loops < 0:
        problems.append(f"negative free loop count {pd.free_loops}")
    if not pd.crossings and pd.free_loops == 0:
        problems.append("empty diagram: no crossings and no components")
    counts: dict[int, int] = {}
    for cr in pd.crossings:
        for x in cr.arcs:
            counts[x] = counts.get(x, 0) + 1
    miscounted = [f"{x} ({k}x)" for x, k in sorted(counts.items()) if k != 2]
    if miscounted:
        # a relabelling slip shows up as one label too many and one too few; report it once
        problems.append("arc labels not used exactly twice: " + ", ".join(miscounted))
    ins: dict[int, int] = {}
    outs: dict[int, int] = {}
    for cr in pd.crossings:
        for i, o in (cr.under, cr.over):
            ins[i] = ins.get(i, 0) + 1
            outs[o] = outs.get(o, 0) + 1
    for x in sorted(counts):
        if counts[x] == 2 and (ins.get(x, 0) != 1 or outs.get(x, 0) != 1):
            problems.append(f"arc {x} is not oriented consistently (enters {ins.get(x, 0)}x, leaves {outs.get(x, 0)}x)")
    return problems


def _require_valid(pd: PDCode) -> None:
    problems = validate(pd)
    if problems:
        raise InvalidDiagram("; ".join(problems))


# --- structure ---------------------------------------------------------------


def components(pd: PDCode) -> list[tuple[int, ...]]:
    """Link components as cycles of arcs; free loops come last as empty tuples."""
    _require_valid(pd)
    nxt = pd.successor
    seen = set()
    cycles = []
    for start in sorted(nxt):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = nxt[x]
        cycles.append(tuple(cyc))
    return cycles + [()] * pd.free_loops


def _component_of(pd: PDCode) -> dict[int, int]:
    return {x: i for i, cyc in enumerate(components(pd)) for x in cyc}


def writhe(pd: PDCode) -> int:
    _require_valid(pd)
    return sum(cr.sign for cr in pd.crossings)


def linking_number(pd: PDCode, c1: int, c2: int) -> int:
    """Half the signed count of crossings between components ``c1`` and ``c2``."""
    comps = components(pd)
    n = len(comps)
    if not (0 <= c1 < n and 0 <= c2 < n):
        raise ValueError(f"component ids must lie in 0..{n - 1}")
    if c1 == c2:
        raise ValueError("linking number needs two distinct components")
    comp = _component_of(pd)
    total = 0
    for cr in pd.crossings:
        if {comp[cr.a], comp[cr.b]} == {c1, c2}:
            total += cr.sign
    if total % 2:
        raise InvalidDiagram(f"odd inter-component sign sum {total}")
    return total // 2


def mirror(pd: PDCode) -> PDCode:
    return PDCode(tuple(cr.flipped() for cr in pd.crossings), pd.free_loops)


def _offset(pd: PDCode, k: int) -> PDCode:
    return PDCode(tuple(Crossing(cr.a + k, cr.b + k, cr.c + k, cr.d + k, cr.sign) for cr in pd.crossings), pd.free_loops)


def split_union(pd1: PDCode, pd2: PDCode) -> PDCode:
    shift = max(pd1.arcs, default=0)
    pd2 = _offset(pd2, shift)
    return PDCode(pd1.crossings + pd2.crossings, pd1.free_loops + pd2.free_loops)


def connected_sum(pd1: PDCode, pd2: PDCode) -> PDCode:
    """Connected sum of two knot diagrams, cut at the lowest-labelled arc of each."""
    for pd in (pd1, pd2):
        if len(components(pd)) != 1:
            raise ValueError("connected sum is defined here for knots only")
    if not pd1.crossings:
        return pd2.canonical()
    if not pd2.crossings:
        return pd1.canonical()
    shift = max(pd1.arcs)
    pd2 = _offset(pd2, shift)
    x = min(pd1.arcs)
    y = min(pd2.arcs)

    def swap_end(crossings, old, new):
        out = []
        for cr in crossings:
            arcs = list(cr.arcs)
            for pos in _incoming_positions(cr):
                if arcs[pos] == old:
                    arcs[pos] = new
            out.append(Crossing(*arcs, cr.sign))
        return tuple(out)

    # x now ends where y used to end and vice versa
    c1 = swap_end(pd1.crossings, x, y)
    c2 = swap_end(pd2.crossings, y, x)
    return PDCode(c1 + c2).canonical()


def _incoming_positions(cr: Crossing) -> tuple[int, int]:
    return (0, 3) if cr.sign > 0 else (0, 1)


# --- local moves ---------------------------------------------------------------


class _Union:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _resolve(pd: PDCode, removed: set[int], uf: _Union, touched: Iterable[int], extra: Sequence[Crossing] = ()) -> PDCode:
    kept = [cr for i, cr in enumerate(pd.crossings) if i not in removed] + list(extra)
    mapping = {x: uf.find(x) for cr in kept for x in cr.arcs}
    new = [cr.relabel(mapping) for cr in kept]
    alive = {x for cr in new for x in cr.arcs}
    loops = {uf.find(x) for x in touched} - alive
    result = PDCode(tuple(new), pd.free_loops + len(loops))
    return result.canonical()


def pass_through(pd: PDCode, indices: Iterable[int]) -> PDCode:
    """Delete crossings by joining each strand's incoming and outgoing arcs.

    Only planar when the deleted crossings form a Reidemeister-removable
    configuration (a bigon pair or a kink); callers are responsible for that.
    """
    indices = set(indices)
    uf = _Union()
    touched = []
    for i in indices:
        cr = pd.crossings[i]
        for a, b in (cr.under, cr.over):
            uf.union(a, b)
        touched.extend(cr.arcs)
    return _resolve(pd, indices, uf, touched)


def change_crossing(pd: PDCode, i: int) -> PDCode:
    crossings = list(pd.crossings)
    crossings[i] = crossings[i].flipped()
    return PDCode(tuple(crossings), pd.free_loops)


def smooth_crossing(pd: PDCode, i: int) -> PDCode:
    """Oriented (Seifert) smoothing of crossing ``i``."""
    cr = pd.crossings[i]
    u_in, u_out = cr.under
    o_in, o_out = cr.over
    uf = _Union()
    uf.union(u_in, o_out)
    uf.union(o_in, u_out)
    return _resolve(pd, {i}, uf, cr.arcs)


def remove_kinks(pd: PDCode) -> PDCode:
    """Repeatedly undo Reidemeister I kinks (an arc joining adjacent slots of one crossing)."""
    while True:
        for i, cr in enumerate(pd.crossings):
            arcs = cr.arcs
            if any(arcs[k] == arcs[(k + 1) % 4] for k in range(4)):
                pd = pass_through(pd, [i])
                break
        else:
            return pd


def component_diagram(pd: PDCode, idx: int) -> PDCode:
    """The knot diagram of component ``idx`` alone, other components erased."""
    comps = components(pd)
    if not comps[idx]:
        return PDCode.unknot()
    comp = _component_of(pd)
    uf = _Union()
    removed = set()
    touched = []
    for i, cr in enumerate(pd.crossings):
        cu, co = comp[cr.a], comp[cr.b]
        if cu == idx and co == idx:
            continue
        removed.add(i)
        if cu == idx:
            uf.union(*cr.under)
            touched.extend(cr.under)
        elif co == idx:
            uf.union(*cr.over)
            touched.extend(cr.over)
    stripped = PDCode(pd.crossings, 0)
    return _resolve(stripped, removed, uf, touched)


# --- skein triples ---------------------------------------------------------------


@dataclass(frozen=True)
class SkeinTriple:
    """``(K+, K-, K' u K'')``: two knots differing at one crossing and its oriented smoothing.

    ``labels`` gives the component indices of ``k_smooth`` playing the roles of K' and K''.
    """

    k_plus: PDCode
    k_minus: PDCode
    k_smooth: PDCode
    labels: tuple[int, int] = (0, 1)
    note: str = field(default="", compare=False)

    def smooth_components(self) -> tuple[PDCode, PDCode]:
        i, j = self.labels
        return component_diagram(self.k_smooth, i), component_diagram(self.k_smooth, j)


def skein_triple_at(pd: PDCode, i: int) -> SkeinTriple:
    """Skein triple at crossing ``i`` of a knot diagram."""
    if len(components(pd)) != 1:
        raise ValueError("skein triples are taken at a self-crossing of a knot")
    other = change_crossing(pd, i)
    smooth = smooth_crossing(pd, i)
    if pd.crossings[i].sign > 0:
        return SkeinTriple(pd.canonical(), other.canonical(), smooth)
    return SkeinTriple(other.canonical(), pd.canonical(), smooth)


# --- text format -------------------------------------------------------------

_LINE = re.compile(r"^\s*(?:(?P<name>[^\[\]]+?)\s*:\s*)?PD\[(?P<body>.*)\]\s*$")
_X = re.compile(r"\s*X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]\s*")


def parse_pd_line(text: str, line: int = 1) -> tuple[str | None, PDCode]:
    """Parse ``[name:] PD[X(a,b,c,d), ...]`` into ``(name, PDCode)``."""
    m = _LINE.match(text)
    if not m:
        col = text.find("PD[") + 1 if "PD[" in text else 1
        raise PDParseError("expected 'PD[X(a,b,c,d), ...]'", line, col)
    name = m.group("name")
    body = m.group("body")
    offset = m.start("body") + 1
    quads = []
    if body.strip():
        pos = 0
        while pos < len(body):
            xm = _X.match(body, pos)
            if not xm:
                raise PDParseError(f"malformed crossing near {body[pos:pos + 12]!r}", line, offset + pos)
            quads.append(tuple(int(g) for g in xm.groups()))
            pos = xm.end()
            if pos < len(body):
                if body[pos] != ",":
                    raise PDParseError("expected ',' between crossings", line, offset + pos)
                pos += 1
    if not quads:
        return name, PDCode.unknot()
    try:
        pd = PDCode.from_tuples(quads)
    except InvalidDiagram as exc:
        raise PDParseError(str(exc), line, offset) from exc
    problems = validate(pd)
    if problems:
        raise PDParseError("; ".join(problems), line, offset)
    return name, pd


def parse_pd(text: str) -> PDCode:
    return parse_pd_line(text)[1]


def format_pd(pd: PDCode, name: str | None = None) -> str:
    if not pd.crossings and pd.free_loops > 1:
        raise ValueError("PD text cannot express a crossingless unlink")
    if pd.crossings and pd.free_loops:
        raise ValueError("PD text cannot express free loops next to crossings")
    body = "PD[" + ", ".join(str(cr) for cr in pd.crossings) + "]"
    return f"{name}: {body}" if name else body


def _infer_signs(quads: list[tuple[int, int, int, int]]) -> list[int]:
    """Choose each over-strand direction so every arc enters once and leaves once."""
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, q in enumerate(quads):
        for pos, x in enumerate(q):
            occ.setdefault(x, []).append((i, pos))
    bad = [x for x, o in occ.items() if len(o) != 2]
    if bad:
        raise InvalidDiagram(f"arc {sorted(bad)[0]} appears {len(occ[sorted(bad)[0]])} times (expected 2)")
    # role[(i,pos)] = True if the arc enters crossing i at pos
    role: dict[tuple[int, int], bool] = {}
    signs: list[int | None] = [None] * len(quads)
    stack = []

    def set_role(slot, incoming):
        if slot in role:
            if role[slot] != incoming:
                raise InvalidDiagram(f"inconsistent orientation at arc {quads[slot[0]][slot[1]]}")
            return
        role[slot] = incoming
        stack.append(slot)

    def set_sign(i, s):
        if signs[i] is None:
            signs[i] = s
            set_role((i, 3), s > 0)
            set_role((i, 1), s < 0)
        elif signs[i] != s:
            raise InvalidDiagram(f"inconsistent orientation at crossing {i + 1}")

    def drain():
        while stack:
            i, pos = stack.pop()
            x = quads[i][pos]
            a, b = occ[x]
            other = b if a == (i, pos) else a
            set_role(other, not role[(i, pos)])
            j, p = other
            if p in (1, 3):
                incoming = role[other]
                set_sign(j, 1 if (p == 3) == incoming else -1)

    for i in range(len(quads)):
        set_role((i, 0), True)
        set_role((i, 2), False)
    drain()
    for i, (a, b, c, d) in enumerate(quads):
        if signs[i] is None:
            # free choice (a component that is over at every crossing): use label order
            forward = (b - d == 1) or (d - b > 1)
            set_sign(i, 1 if forward else -1)
            drain()
    return [int(s) for s in signs]
