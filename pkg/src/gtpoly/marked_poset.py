"""Marked posets, their order polytopes and identity diagrams.

A graph on a poset is a set of arrows (u, v).  Every cover p < q contributes
the arrow (p, q); the reverse arrow (q, p) records that x_p = x_q.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .rootdata import frac

Node = Hashable


class Unbounded(ValueError):
    pass


@dataclass(frozen=True)
class MarkedPoset:
    elements: tuple
    covers: tuple
    marking: Mapping
    pseudo: bool = False
    positions: Mapping = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "covers", tuple(tuple(c) for c in self.covers))
        object.__setattr__(self, "marking", {a: frac(v) for a, v in self.marking.items()})
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise ValueError("duplicate elements")
        for p, q in self.covers:
            if p not in known or q not in known:
                raise ValueError(f"cover ({p}, {q}) uses an unknown element")
        if not set(self.marking) <= known:
            raise ValueError("marking on unknown elements")
        if _has_cycle(self.elements, self.covers):
            raise ValueError("covers contain a cycle")
        for p, q in self.covers:
            if p in self.marking and q in self.marking and self.marking[p] > self.marking[q]:
                raise ValueError(f"marking is not order compatible at {p} < {q}")

    @property
    def marked(self) -> tuple:
        return tuple(e for e in self.elements if e in self.marking)

    @property
    def unmarked(self) -> tuple:
        return tuple(e for e in self.elements if e not in self.marking)

    def extremal(self) -> tuple:
        """(minimal elements, maximal elements)."""
        has_lower = {q for _, q in self.covers}
        has_upper = {p for p, _ in self.covers}
        return (
            tuple(e for e in self.elements if e not in has_lower),
            tuple(e for e in self.elements if e not in has_upper),
        )

    def is_bounded(self) -> bool:
        lo, hi = self.extremal()
        return all(e in self.marking for e in lo + hi)

    def hasse_graph(self) -> frozenset:
        return frozenset(self.covers)

    def values(self, x) -> dict:
        """Full value map: marking values plus the coordinates of x."""
        vals = dict(self.marking)
        vals.update(point_values(self, x))
        return vals

    def to_json(self) -> dict:
        return {
            "elements": [str(e) for e in self.elements],
            "covers": [[str(p), str(q)] for p, q in self.covers],
            "marked": [str(a) for a in self.marked],
            "marking": {str(a): [v.numerator, v.denominator] for a, v in self.marking.items()},
        }


def point_values(poset: MarkedPoset, x) -> dict:
    """Normalize a point given as a mapping or as a sequence in unmarked order."""
    names = poset.unmarked
    if isinstance(x, Mapping):
        if set(x) != set(names):
            raise ValueError("point must be defined on exactly the unmarked elements")
        return {p: frac(x[p]) for p in names}
    x = tuple(x)
    if len(x) != len(names):
        raise ValueError(f"point has {len(x)} coordinates, poset has {len(names)} unmarked elements")
    return {p: frac(v) for p, v in zip(names, x)}


def as_tuple(poset: MarkedPoset, x) -> tuple:
    vals = point_values(poset, x)
    return tuple(vals[p] for p in poset.unmarked)


def _has_cycle(elements, covers) -> bool:
    indeg = {e: 0 for e in elements}
    out = defaultdict(list)
    for p, q in covers:
        out[p].append(q)
        indeg[q] += 1
    queue = deque(e for e in elements if indeg[e] == 0)
    seen = 0
    while queue:
        e = queue.popleft()
        seen += 1
        for f in out[e]:
            indeg[f] -= 1
            if indeg[f] == 0:
                queue.append(f)
    return seen != len(elements)


def membership(poset: MarkedPoset, x) -> bool:
    vals = poset.values(x)
    return all(vals[p] <= vals[q] for p, q in poset.covers)


@dataclass(frozen=True)
class IdentityDiagram:
    poset: MarkedPoset
    values: Mapping
    double: frozenset

    def components(self) -> list:
        """Connected components under double edges, in element order."""
        return _components(self.poset.elements, self.double)

    def unmarked_components(self) -> list:
        marked = self.poset.marking
        return [c for c in self.components() if not any(e in marked for e in c)]


def _components(elements, edges) -> list:
    parent = {e: e for e in elements}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for p, q in edges:
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rq] = rp
    groups = {}
    for e in elements:
        groups.setdefault(find(e), []).append(e)
    return [tuple(g) for g in groups.values()]


def identity_diagram(poset: MarkedPoset, x) -> IdentityDiagram:
    if not membership(poset, x):
        raise ValueError("point is not in the marked order polytope")
    vals = poset.values(x)
    double = frozenset((p, q) for p, q in poset.covers if vals[p] == vals[q])
    return IdentityDiagram(poset, vals, double)


def is_vertex(poset: MarkedPoset, x) -> bool:
    return not identity_diagram(poset, x).unmarked_components()


# completion procedure


def _check_graph(graph, poset):
    covers = set(poset.covers)
    arrows = set(graph)
    if not covers <= arrows:
        raise ValueError("graph must contain every Hasse arrow")
    for u, v in arrows:
        if (u, v) not in covers and (v, u) not in covers:
            raise ValueError(f"arrow ({u}, {v}) is not along a cover")
    return arrows


def _reach(start, out) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in out[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _chain_rule(arrows, poset) -> bool:
    """Directed paths between equally marked elements get reversed."""
    out, inc = defaultdict(set), defaultdict(set)
    for u, v in arrows:
        out[u].add(v)
        inc[v].add(u)
    changed = False
    marked = poset.marked
    for a in marked:
        fwd = None
        for b in marked:
            if a == b or poset.marking[a] != poset.marking[b]:
                continue
            if fwd is None:
                fwd = _reach(a, out)
            if b not in fwd:
                continue
            between = fwd & _reach(b, inc)
            for u, v in list(arrows):
                if u in between and v in between and (v, u) not in arrows:
                    arrows.add((v, u))
                    changed = True
    return changed


def _triangle_rule(arrows) -> bool:
    """p<->r<->q together with p->s->q forces s->p and q->s."""
    out = defaultdict(set)
    for u, v in arrows:
        out[u].add(v)
    dbl = {u: {v for v in out[u] if u in out[v]} for u in list(out)}
    changed = False
    for r, nbrs in dbl.items():
        for p in nbrs:
            for q in nbrs:
                if p == q:
                    continue
                for s in out[p]:
                    if q in out[s]:
                        for arrow in ((s, p), (q, s)):
                            if arrow not in arrows:
                                arrows.add(arrow)
                                changed = True
    return changed


def complete(graph, poset: MarkedPoset, chain_first: bool = True) -> frozenset:
    """Least fixpoint of the two completion rules.

    ``chain_first`` only changes the order in which the rules are tried; the
    fixpoint is the same either way.
    """
    arrows = _check_graph(graph, poset)
    rules = [lambda: _chain_rule(arrows, poset), lambda: _triangle_rule(arrows)]
    if not chain_first:
        rules.reverse()
    while True:
        changed = False
        for rule in rules:
            changed |= rule()
        if not changed:
            return frozenset(arrows)


def doubles(graph) -> frozenset:
    arrows = set(graph)
    return frozenset((u, v) for u, v in arrows if (v, u) in arrows)


def _component_values(poset, comps):
    """Marked value of each component, or None; raises on conflicting marks."""
    where = {}
    value = []
    for k, comp in enumerate(comps):
        vals = {poset.marking[e] for e in comp if e in poset.marking}
        if len(vals) > 1:
            raise _Dead
        value.append(vals.pop() if vals else None)
        for e in comp:
            where[e] = k
    return where, value


class _Dead(Exception):
    pass


def enumerate_vertices(poset: MarkedPoset) -> set:
    """Vertices of the marked order polytope by the completion procedure.

    Starting from the completed Hasse diagram, repeatedly take the first
    component (in element order) that holds no marked element and branch on
    every cover leaving it.  Each branch doubles that cover and completes.
    A state whose components carry two different marking values, or whose
    forced values break a cover, is abandoned.  When every component is
    marked the point is read off.  Returned points are tuples ordered like
    ``poset.unmarked``.
    """
    if not poset.is_bounded():
        raise Unbounded("every minimal and maximal element must be marked")
    start = complete(poset.hasse_graph(), poset)
    seen = set()
    found = set()
    stack = [start]
    while stack:
        graph = stack.pop()
        key = doubles(graph)
        if key in seen:
            continue
        seen.add(key)
        comps = _components(poset.elements, key)
        try:
            where, value = _component_values(poset, comps)
        except _Dead:
            continue
        if any(
            value[where[p]] is not None
            and value[where[q]] is not None
            and value[where[p]] > value[where[q]]
            for p, q in poset.covers
        ):
            continue
        open_comp = next((k for k, v in enumerate(value) if v is None), None)
        if open_comp is None:
            pt = tuple(value[where[p]] for p in poset.unmarked)
            if membership(poset, pt):
                found.add(pt)
            continue
        for p, q in poset.covers:
            inside = (where[p] == open_comp) + (where[q] == open_comp)
            if inside != 1 or (q, p) in graph:
                continue
            stack.append(complete(graph | {(q, p)}, poset))
    return found


# rendering


def diagram_to_dot(diagram: IdentityDiagram, name: str = "identity") -> str:
    """DOT text: marked values as crosses, marked zeros as open circles,
    double edges as undirected lines, single arrows dotted."""
    poset = diagram.poset
    lines = [f"graph {name} {{", "  node [label=\"\"];"]
    for e in poset.elements:
        attrs = []
        if e in poset.marking:
            if str(e).startswith("zero"):
                attrs.append("shape=circle, width=0.15")
            else:
                attrs.append("shape=none, label=\"x\"")
        else:
            attrs.append("shape=point, width=0.12")
        if e in poset.positions:
            x, y = poset.positions[e]
            attrs.append(f"pos=\"{x},{-y}!\"")
        attrs.append(f"tooltip=\"{diagram.values[e]}\"")
        lines.append(f"  {e} [{', '.join(attrs)}];")
    for p, q in poset.covers:
        if (p, q) in diagram.double:
            lines.append(f"  {p} -- {q};")
        else:
            lines.append(f"  {p} -- {q} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_json(poset: MarkedPoset) -> str:
    return json.dumps(poset.to_json(), sort_keys=True)
