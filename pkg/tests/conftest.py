import random
from fractions import Fraction

import pytest

from gtpoly.rootdata import weight
from gtpoly.tweaked_d import TweakedPattern

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "failed": [], "ran": 0})
    if report.when == "call":
        entry["ran"] += 1
    if report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def d3_example():
    lam = weight("D", [2, 1, 0])
    return lam, TweakedPattern(lam, (2, 0, 1, 2, 0, 2, 2))


@pytest.fixture
def d4_example():
    lam = weight("D", [4, 3, 2, -1])
    cells = {
        "z1_1": 4, "z1_2": 3, "zup1": 1, "zdown1": 2,
        "y2_2": 4, "y2_3": 3, "y2_4": 0, "z2_2": 4, "zup2": 3, "zdown2": 0,
        "y3_3": 0, "y3_4": 0, "z3_3": 0, "y4_4": 0,
    }
    return lam, TweakedPattern.from_mapping(lam, cells)


def convex_samples(points, count, rng):
    """Random convex combinations of 2 to 4 distinct points."""
    points = sorted(points)
    out = []
    if len(points) < 2:
        return out
    while len(out) < count:
        picked = rng.sample(points, rng.randint(2, min(4, len(points))))
        w = [Fraction(rng.randint(1, 9)) for _ in picked]
        total = sum(w)
        out.append(tuple(sum(wi * p[k] for wi, p in zip(w, picked)) / total for k in range(len(picked[0]))))
    return out


def string_samples(lam, count, rng):
    """Points near the string polytope of lam: half are convex combinations
    of its vertices, half are those combinations pushed along a random
    direction (mostly landing outside)."""
    from gtpoly.polyoracle import hrep, vertex_enumeration

    verts = vertex_enumeration(hrep("stringD", lam))
    inside = convex_samples(verts, count - count // 2, rng)
    pushed = []
    for p in convex_samples(verts, count // 2, rng):
        step = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        pushed.append(tuple(v + step * rng.randint(-1, 1) for v in p))
    return inside + pushed


def reference_d3_table(lam, p):
    """Reference symbolic D_3 image table of a string point (a, b, c, d, e, f),
    entry by entry, keyed by tweaked cell names."""
    l1, l2, l3 = lam.eps
    a, b, c, d, e, f = p.values
    return {
        "z1_1": l1 - e + f,
        "zup1": l3 + d - f,
        "zdown1": l3 + c - e,
        "y2_2": l2 + c - d - e + f,
        "y2_3": l3 + d - e,
        "z2_2": l3 + a + d - e,
        "y3_3": l3 + a - b + d - e,
    }
