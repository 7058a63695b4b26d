"""Tweaked patterns in type D_n.

Each problematic cell z_{i,n-1} (i <= n-2) is split into a pair
``zup{i}``/``zdown{i}`` tied together by the linear relation

    y_{i,n-1} - y_{i+1,n-1} = zup_i - zdown_i            (the space V_lambda)

Rows are stored as z1, y2, z2, ..., y(n-1), z(n-1), yn where row z_i is
``z{i}_{i..n-2}, zup{i}, zdown{i}`` for i <= n-2 and row z(n-1) is the single
cell ``z{n-1}_{n-1}``.

Diagram nodes use the names xi_i_j (y cells and the weight row), zeta_i_j,
zup_i and zdown_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .gt import GTPattern, _grid, value_getter
from .marked_poset import MarkedPoset, _components
from .rootdata import LieType, Weight, frac

TAGS = ("marked", "anomaly", "double-impurity", "single-impurity", "triviality", "none")


def _check_d(lam: Weight, min_rank: int = 3):
    if lam.family != "D":
        raise ValueError("tweaked patterns exist in type D only")
    if lam.rank < min_rank:
        raise ValueError(f"tweaked patterns need rank at least {min_rank}")


@lru_cache(maxsize=None)
def tweaked_rows(n: int) -> tuple:
    rows = []
    for i in range(1, n - 1):
        rows.append(tuple(f"z{i}_{j}" for j in range(i, n - 1)) + (f"zup{i}", f"zdown{i}"))
        rows.append(tuple(f"y{i + 1}_{j}" for j in range(i + 1, n + 1)))
    rows.append((f"z{n - 1}_{n - 1}",))
    rows.append((f"y{n}_{n}",))
    return tuple(rows)


@lru_cache(maxsize=None)
def tweaked_names(n: int) -> tuple:
    return tuple(c for row in tweaked_rows(n) for c in row)


@dataclass(frozen=True)
class TweakedPattern:
    weight: Weight
    values: tuple

    def __post_init__(self):
        _check_d(self.weight)
        vals = tuple(frac(v) for v in self.values)
        names = tweaked_names(self.weight.rank)
        if len(vals) != len(names):
            raise ValueError(f"tweaked D{self.weight.rank} patterns have {len(names)} entries")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, lam: Weight, cells: dict) -> "TweakedPattern":
        return cls(lam, tuple(cells[c] for c in tweaked_names(lam.rank)))

    @property
    def names(self) -> tuple:
        return tweaked_names(self.weight.rank)

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    def __getitem__(self, name):
        return self.as_dict()[name]

    def rows(self) -> list:
        d = self.as_dict()
        return [[d[c] for c in row] for row in tweaked_rows(self.weight.rank)]

    def getter(self) -> Callable:
        return value_getter(self.weight, self.as_dict())

    def to_json(self) -> dict:
        d = self.as_dict()
        n = self.weight.rank
        enc = lambda v: [v.numerator, v.denominator]
        return {
            "family": "D",
            "rank": n,
            "lambda": [enc(v) for v in self.weight.eps],
            "y": {k: enc(v) for k, v in d.items() if k.startswith("y")},
            "z": {k: enc(v) for k, v in d.items() if k.startswith("z") and "_" in k},
            "zup": {str(i): enc(d[f"zup{i}"]) for i in range(1, n - 1)},
            "zdown": {str(i): enc(d[f"zdown{i}"]) for i in range(1, n - 1)},
            "order": list(self.names),
            "values": [enc(v) for v in self.values],
        }


def tweaked_inequalities(lam: Weight, get: Callable) -> Iterator[tuple]:
    """Pairs (a, b) meaning a <= b."""
    n = lam.rank
    y = lambda i, j: get(f"y{i}_{j}")
    z = lambda i, j: get(f"z{i}_{j}")
    for small, big in _relations(n):
        yield get(small), get(big)
    for i in range(1, n - 1):
        rest = y(i, n) + y(i + 1, n)
        yield get(f"zup{i}"), y(i, n - 1) + rest
        yield get(f"zdown{i}"), y(i + 1, n - 1) + rest
    yield z(n - 1, n - 1), y(n - 1, n - 1) + y(n - 1, n) + y(n, n)


def tweaked_equalities(lam: Weight, get: Callable) -> Iterator[tuple]:
    """Pairs (a, b) meaning a == b (the space V_lambda)."""
    n = lam.rank
    for i in range(1, n - 1):
        yield get(f"y{i}_{n - 1}") - get(f"y{i + 1}_{n - 1}"), get(f"zup{i}") - get(f"zdown{i}")


@lru_cache(maxsize=None)
def _relations(n: int) -> tuple:
    """Order relations (smaller, larger) that need no addition."""
    rel = []
    for i in range(1, n - 1):
        for j in range(i, n - 1):
            rel.append((f"z{i}_{j}", f"y{i}_{j}"))
            rel.append((f"y{i}_{j + 1}", f"z{i}_{j}"))
    for i in range(2, n):
        for j in range(i, n - 1):
            rel.append((f"y{i}_{j}", f"z{i - 1}_{j - 1}"))
            rel.append((f"z{i - 1}_{j}", f"y{i}_{j}"))
        rel.append((f"y{i}_{n - 1}", f"z{i - 1}_{n - 2}"))
        rel.append((f"zdown{i - 1}", f"y{i}_{n - 1}"))
    for i in range(1, n - 1):
        rel.append((f"zup{i}", f"y{i}_{n - 1}"))
        rel.append((f"y{i}_{n}", f"zup{i}"))
        rel.append((f"y{i + 1}_{n}", f"zup{i}"))
        rel.append((f"y{i}_{n}", f"zdown{i}"))
        rel.append((f"y{i + 1}_{n}", f"zdown{i}"))
    m = n - 1
    rel.append((f"z{m}_{m}", f"y{m}_{m}"))
    rel.append((f"y{m}_{n}", f"z{m}_{m}"))
    rel.append((f"y{n}_{n}", f"z{m}_{m}"))
    return tuple(rel)


def _as_tweaked(lam: Weight, t) -> TweakedPattern:
    if isinstance(t, TweakedPattern):
        if t.weight.type != lam.type:
            raise ValueError("pattern shape does not match the weight")
        return t
    return TweakedPattern(lam, tuple(t))


def in_v_lambda(lam: Weight, t) -> bool:
    t = _as_tweaked(lam, t)
    return all(a == b for a, b in tweaked_equalities(lam, t.getter()))


def tweaked_membership(lam: Weight, t) -> bool:
    _check_d(lam)
    t = _as_tweaked(lam, t)
    get = t.getter()
    return in_v_lambda(lam, t) and all(a <= b for a, b in tweaked_inequalities(lam, get))


# the bijection with ordinary D patterns


def psi(t: TweakedPattern) -> GTPattern:
    """Collapse each pair (zup, zdown) to its minimum."""
    lam = t.weight
    n = lam.rank
    if not in_v_lambda(lam, t):
        raise ValueError("pattern is not in V_lambda")
    d = t.as_dict()
    cells = {k: v for k, v in d.items() if not k.startswith(("zup", "zdown"))}
    for i in range(1, n - 1):
        cells[f"z{i}_{n - 1}"] = min(d[f"zup{i}"], d[f"zdown{i}"])
    return GTPattern.from_mapping(lam, cells)


def psi_inverse(lam: Weight, p: GTPattern) -> TweakedPattern:
    from .gt import gt_membership

    _check_d(lam)
    if not gt_membership(lam, p):
        raise ValueError("not a member of the type D pattern polytope")
    n = lam.rank
    get = p.getter()
    cells = {k: v for k, v in p.as_dict().items()}
    for i in range(1, n - 1):
        z = cells.pop(f"z{i}_{n - 1}")
        a, b = get(f"y{i}_{n - 1}"), get(f"y{i + 1}_{n - 1}")
        m = min(a, b)
        cells[f"zup{i}"] = z + a - m
        cells[f"zdown{i}"] = z + b - m
    return TweakedPattern.from_mapping(lam, cells)


def phi(lam: Weight, a) -> GTPattern:
    """Piecewise-affine map from string coordinates to an ordinary D pattern."""
    _check_d(lam)
    n = lam.rank
    if a.rank != n:
        raise ValueError("string point rank does not match the weight")
    y = {(1, j): lam[j] for j in range(1, n + 1)}
    for i in range(2, n + 1):
        for j in range(i, n):
            y[(i, j)] = (
                y[(i - 1, j)]
                + a.a(i - 1, j - 1)
                - a.a(i - 1, j)
                - a.bar(i - 1, j)
                + a.bar(i - 1, j - 1)
            )
        y[(i, n)] = y[(i - 1, n)] + a.a(i - 1, n - 1) - a.bar(i - 1, n - 1)
    cells = {f"y{i}_{j}": v for (i, j), v in y.items() if i >= 2}
    for i in range(1, n - 1):
        for j in range(i, n - 1):
            cells[f"z{i}_{j}"] = y[(i, j)] + a.bar(i, j - 1) - a.bar(i, j)
        cells[f"z{i}_{n - 1}"] = y[(i, n)] + min(
            a.a(i, n - 2) - a.bar(i, n - 1), a.a(i, n - 1) - a.bar(i, n - 2)
        )
    cells[f"z{n - 1}_{n - 1}"] = y[(n - 1, n)] + a.a(n - 1, n - 1)
    return GTPattern.from_mapping(lam, cells)


# diagrams


def node_name(cell: str) -> str:
    """Diagram node name of a pattern cell."""
    if cell.startswith("zup"):
        return f"zup_{cell[3:]}"
    if cell.startswith("zdown"):
        return f"zdown_{cell[5:]}"
    kind = "xi" if cell[0] == "y" else "zeta"
    i, j = cell[1:].split("_")
    return f"{kind}_{i}_{j}"


@lru_cache(maxsize=None)
def tweaked_poset_cells(n: int) -> tuple:
    """Cells of the tweaked poset: the weight row y1_j followed by the pattern."""
    return tuple(f"y1_{j}" for j in range(1, n + 1)) + tweaked_names(n)


def tweaked_poset(lam: Weight) -> MarkedPoset:
    """The tweaked poset with its pseudo-marking on the weight row."""
    _check_d(lam)
    n = lam.rank
    cells = tweaked_poset_cells(n)
    rel = tuple((node_name(a), node_name(b)) for a, b in _relations(n))
    marking = {node_name(f"y1_{j}"): lam[j] for j in range(1, n + 1)}
    pos = {node_name(c): _position(c, n) for c in cells}
    return MarkedPoset(tuple(node_name(c) for c in cells), rel, marking, pseudo=True, positions=pos)


def _position(cell: str, n: int) -> tuple:
    if cell.startswith(("zup", "zdown")):
        i = int(cell.lstrip("zupdown"))
        shift = -0.3 if cell.startswith("zup") else 0.3
        return (2 * n - 3, 2 * i - 1 + shift)
    i, j = (int(v) for v in cell[1:].split("_"))
    if cell[0] == "y":
        return (2 * j - 2, 2 * i - 2)
    return (2 * j - 1, 2 * i - 1)


@dataclass(frozen=True)
class TweakedDiagram:
    weight: Weight
    nodes: tuple
    values: dict
    white: frozenset
    black_double: frozenset
    red_double: frozenset
    red_single: frozenset
    marked: frozenset = field(default_factory=frozenset)

    def components(self) -> list:
        edges = [tuple(e) for e in self.black_double | self.red_double]
        return _components(self.nodes, edges)

    def red_nodes(self) -> set:
        return {v for arrow in self.red_single for v in arrow}


def _triplets(n: int) -> list:
    """(p, q, r, s) node tuples of the four-term bounds."""
    out = []
    for i in range(1, n - 1):
        r, s = f"xi_{i}_{n}", f"xi_{i + 1}_{n}"
        out.append((f"xi_{i}_{n - 1}", f"zup_{i}", r, s))
        out.append((f"xi_{i + 1}_{n - 1}", f"zdown_{i}", r, s))
    out.append((f"xi_{n - 1}_{n - 1}", f"zeta_{n - 1}_{n - 1}", f"xi_{n - 1}_{n}", f"xi_{n}_{n}"))
    return out


def tweaked_diagram(lam: Weight, t) -> TweakedDiagram:
    """Diagram of a member pattern.

    Rules in order: equal covers give black doubles; tight four-term bounds
    give red triplets p->q->r, q->s; a triplet whose four values agree turns
    its nodes white; otherwise p = q gives a red double r=s, q = r gives s=p,
    q = s gives r=p; a remaining triplet next to a red double r=s (resp. s=p,
    r=p) becomes the black double p=q (resp. q=r, q=s); last, equal pairs
    (zup_i, zdown_i) sitting on xi_{i,n} or xi_{i+1,n} join xi_{i,n-1} and
    xi_{i+1,n-1}.
    """
    _check_d(lam)
    t = _as_tweaked(lam, t)
    if not tweaked_membership(lam, t):
        raise ValueError("pattern is not in the tweaked polytope")
    n = lam.rank
    get = t.getter()
    vals = {node_name(c): get(c) for c in tweaked_poset_cells(n)}
    rel = [(node_name(a), node_name(b)) for a, b in _relations(n)]
    black = {frozenset(e) for e in rel if vals[e[0]] == vals[e[1]]}
    white, red_double = set(), set()
    remaining = []
    for p, q, r, s in _triplets(n):
        if vals[q] != vals[p] + vals[r] + vals[s]:
            continue
        if vals[p] == vals[q] == vals[r] == vals[s]:
            white |= {p, q, r, s}
        elif vals[p] == vals[q]:
            red_double.add(frozenset((r, s)))
        elif vals[q] == vals[r]:
            red_double.add(frozenset((s, p)))
        elif vals[q] == vals[s]:
            red_double.add(frozenset((r, p)))
        else:
            remaining.append((p, q, r, s))
    red_single = set()
    for p, q, r, s in remaining:
        if frozenset((r, s)) in red_double:
            black.add(frozenset((p, q)))
        elif frozenset((s, p)) in red_double:
            black.add(frozenset((q, r)))
        elif frozenset((r, p)) in red_double:
            black.add(frozenset((q, s)))
        else:
            red_single |= {(p, q), (q, r), (q, s)}
    for i in range(1, n - 1):
        up, down = vals[f"zup_{i}"], vals[f"zdown_{i}"]
        if any(up == down == vals[f"xi_{k}_{n}"] for k in (i, i + 1)):
            black.add(frozenset((f"xi_{i}_{n - 1}", f"xi_{i + 1}_{n - 1}")))
    marked = frozenset(f"xi_1_{j}" for j in range(1, n + 1))
    return TweakedDiagram(
        lam,
        tuple(vals),
        vals,
        frozenset(white),
        frozenset(black),
        frozenset(red_double),
        frozenset(red_single),
        marked,
    )


def anomaly_nodes(n: int, i: int) -> tuple:
    """The six nodes of the white triangle hanging below block i."""
    below = f"zup_{i + 1}" if i + 1 <= n - 2 else f"zeta_{n - 1}_{n - 1}"
    return (
        f"xi_{i}_{n}",
        f"zdown_{i}",
        f"xi_{i + 1}_{n - 1}",
        f"xi_{i + 1}_{n}",
        below,
        f"xi_{i + 2}_{n}",
    )


def anomalies(d: TweakedDiagram) -> list:
    n = d.weight.rank
    return [i for i in range(1, n - 1) if set(anomaly_nodes(n, i)) <= d.white]


def classify_components(d: TweakedDiagram) -> dict:
    """Tag every component; keys are frozensets of node names."""
    n = d.weight.rank
    comps = d.components()
    where = {v: k for k, c in enumerate(comps) for v in c}
    red = d.red_nodes()
    triangles = [set(anomaly_nodes(n, i)) for i in anomalies(d)]
    tags = {}
    for comp in comps:
        key = frozenset(comp)
        tags[key] = _tag(n, key, comps, where, red, triangles, d.marked)
    return tags


def _partner(node: str):
    if node.startswith("zup_"):
        return "zdown_" + node[4:]
    if node.startswith("zdown_"):
        return "zup_" + node[6:]
    return None


def _tag(n, comp, comps, where, red, triangles, marked) -> str:
    if comp & marked:
        return "marked"
    if any(tri <= comp for tri in triangles):
        return "anomaly"
    if len(comp) == 1:
        (node,) = comp
        other = _partner(node)
        if other is not None:
            partner_alone = len(comps[where[other]]) == 1
            if partner_alone and (node in red or other in red):
                return "double-impurity"
            if not partner_alone:
                return "single-impurity"
            return "triviality"
    return "none"


def coset_prediction(d: TweakedDiagram) -> dict:
    """Expected coset of every pattern node of a vertex with half-integral weight.

    Nodes in an anomaly component are 0, impurity nodes lie in Z/2 and all
    remaining nodes lie in 1/2 + Z.
    """
    if _lambda_coset(d.weight) != "half":
        raise ValueError("the coset prediction applies to half-integral weights")
    out = {}
    for comp, tag in classify_components(d).items():
        cls = {"anomaly": "zero", "single-impurity": "half-integer", "double-impurity": "half-integer"}.get(tag, "shifted")
        for node in comp:
            if node not in d.marked:
                out[node] = cls
    return out


def in_coset(value, cls: str) -> bool:
    value = Fraction(value)
    if cls == "zero":
        return value == 0
    if cls == "half-integer":
        return (2 * value).denominator == 1
    return value.denominator == 2


def is_vertex_tweaked(lam: Weight, t) -> bool:
    d = tweaked_diagram(lam, t)
    return not any(tag in ("none", "triviality") for tag in classify_components(d).values())


def _lambda_coset(lam: Weight) -> str:
    if all(v.denominator == 1 for v in lam.eps):
        return "integral"
    if all(v.denominator == 2 for v in lam.eps):
        return "half"
    return "mixed"


def vertex_is_lattice(lam: Weight, t) -> bool:
    """Integrality of the string-coordinate preimage of a vertex."""
    if not is_vertex_tweaked(lam, t):
        raise ValueError("pattern is not a vertex")
    coset = _lambda_coset(lam)
    if coset == "integral":
        return True
    if coset == "half":
        return not anomalies(tweaked_diagram(lam, t))
    raise ValueError("weight is not dominant integral")


def d_witness(lam: Weight) -> TweakedPattern:
    """Vertex whose diagram hangs a white triangle below block n-2.

    Along each diagonal the entries copy one weight entry: the diagonal of
    y_{i,j} has index 2(i+j-2), that of z_{i,j} has index 2(i+j-1), index d
    carries lambda_{d/2+1} up to 2n-4, lambda_{n-1} at 2n-2 and 0 beyond.
    """
    _check_d(lam, 4)
    n = lam.rank

    def diag(d):
        if d <= 2 * n - 4:
            return lam[d // 2 + 1]
        if d == 2 * n - 2:
            return lam[n - 1]
        return Fraction(0)

    cells = {}
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            cells[f"y{i}_{j}"] = diag(2 * (i + j - 2))
    for i in range(1, n - 1):
        for j in range(i, n - 1):
            cells[f"z{i}_{j}"] = diag(2 * (i + j - 1))
    top = max(lam[n], Fraction(0))
    cells["zup1"] = cells["zdown1"] = top
    for i in range(2, n - 1):
        cells[f"zup{i}"] = cells[f"y{i}_{n - 1}"]
        cells[f"zdown{i}"] = cells[f"y{i + 1}_{n - 1}"]
    cells[f"z{n - 1}_{n - 1}"] = Fraction(0)
    return TweakedPattern.from_mapping(lam, cells)


def enumerate_tweaked_lattice_points(lam: Weight) -> list:
    """Members whose entries lie in the coset of the weight.

    Depth-first over the cells in row order; each cell is bounded by the
    already placed cells it is related to and by the box [-M, M] where M is
    the largest absolute weight entry.  Leaves are filtered by
    tweaked_membership.
    """
    _check_d(lam)
    n = lam.rank
    coset = _lambda_coset(lam)
    if coset == "mixed":
        raise ValueError("weight entries must be all integral or all half-integral")
    offset = Fraction(1, 2) if coset == "half" else Fraction(0)
    names = tweaked_names(n)
    m = max(abs(v) for v in lam.eps)
    position = {c: k for k, c in enumerate(names)}
    lower = {c: [] for c in names}
    upper = {c: [] for c in names}
    for small, big in _relations(n):
        ps, pb = position.get(small, -1), position.get(big, -1)
        if small in position and pb < ps:
            upper[small].append(big)
        if big in position and ps < pb:
            lower[big].append(small)
    cells = {}
    get = value_getter(lam, cells)
    out = []

    def rec(k):
        if k == len(names):
            t = TweakedPattern(lam, tuple(cells[c] for c in names))
            if tweaked_membership(lam, t):
                out.append(t)
            return
        c = names[k]
        lo = max([-m] + [get(x) for x in lower[c]])
        hi = min([m] + [get(x) for x in upper[c]])
        for v in _grid(lo, hi, offset, Fraction(1)):
            cells[c] = v
            rec(k + 1)
        cells.pop(c, None)

    rec(0)
    return out


# rendering


def diagram_to_dot(d: TweakedDiagram, name: str = "tweaked") -> str:
    """DOT text: white nodes unfilled, black doubles as lines, red doubles as
    double lines, remaining red arrows dashed.  Single black arrows are
    omitted, so an isolated node has no incident edge."""
    n = d.weight.rank
    cells = {node_name(c): c for c in tweaked_poset_cells(n)}
    lines = [f"graph {name} {{", "  node [label=\"\"];"]
    for v in d.nodes:
        x, y = _position(cells[v], n)
        if v in d.marked:
            style = "shape=none, label=\"x\""
        elif v in d.white:
            style = "shape=circle, width=0.15, style=\"\", color=black"
        else:
            style = "shape=circle, width=0.15, style=filled, fillcolor=black"
        lines.append(f"  {v} [{style}, pos=\"{x},{-y}!\", tooltip=\"{d.values[v]}\"];")
    order = {v: k for k, v in enumerate(d.nodes)}
    key = lambda e: tuple(sorted(order[v] for v in e))
    for e in sorted(d.black_double, key=key):
        a, b = sorted(e, key=order.get)
        lines.append(f"  {a} -- {b};")
    for e in sorted(d.red_double, key=key):
        a, b = sorted(e, key=order.get)
        lines.append(f"  {a} -- {b} [color=\"red:red\"];")
    for a, b in sorted(d.red_single, key=lambda e: (order[e[0]], order[e[1]])):
        lines.append(f"  {a} -- {b} [color=red, style=dashed, dir=forward];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tweaked_to_json(t: TweakedPattern) -> str:
    return json.dumps(t.to_json(), sort_keys=True)
