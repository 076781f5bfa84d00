"""Shared fixtures: memoized crystal stores and the acceptance recorder.

Stores and bijection tables are expensive to build and read-only once
built, so they are cached per session and shared across test files.
"""

import pytest

from krcrystals import (
    CoordCrystal,
    brute_force_R,
    build_kr,
    cartan,
    kr_spec,
)

# every spec combination exercised by the exhaustive acceptance runs
GRID = [
    (kind, n, r, k)
    for kind, n, rmax in (("D1", 4, 2), ("B1", 3, 2), ("A2ODD", 3, 3))
    for r in range(1, rmax + 1)
    for k in (1, 2)
]
LVALUES = (1, 2)

_specs = {}
_stores = {}
_coords = {}
_tables = {}


def get_spec(kind, n, r, k):
    key = (kind, n, r, k)
    if key not in _specs:
        _specs[key] = kr_spec(cartan(kind, n), r, k)
    return _specs[key]


def get_store(kind, n, r, k):
    key = (kind, n, r, k)
    if key not in _stores:
        _stores[key] = build_kr(get_spec(kind, n, r, k))
    return _stores[key]


def get_coord(kind, n, l):
    key = (kind, n, l)
    if key not in _coords:
        _coords[key] = CoordCrystal(cartan(kind, n), l)
    return _coords[key]


def get_table(kind, n, r, k, l, reverse=False):
    """Propagated bijection table; reverse=True swaps the tensor order."""
    key = (kind, n, r, k, l, reverse)
    if key not in _tables:
        store = get_store(kind, n, r, k)
        coord = get_coord(kind, n, l)
        pair = (coord, store) if reverse else (store, coord)
        _tables[key] = brute_force_R(*pair)
    return _tables[key]


@pytest.fixture(scope="session")
def kr_store():
    return get_store


@pytest.fixture(scope="session")
def coord_crystal():
    return get_coord


@pytest.fixture(scope="session")
def r_table():
    return get_table


@pytest.fixture(scope="session")
def kr_specs():
    return get_spec


def word_reaches_top_maximally(cspec, P):
    """Replay the raising word of P stage by stage; return True when every
    stage exhausts its index and the end is the highest tableau of outer(P)."""
    from krcrystals import apply_word, to_highest_word
    from krcrystals.pmdiag import phi
    from krcrystals.tableaux import TableauCrystal, highest_tableau, tableau_apply

    tc = TableauCrystal(cspec)
    t = phi(P, cspec.n)
    for i, m in to_highest_word(P, cspec):
        t = apply_word(tc, "e", [(i, m)], t)
        if t is None or tableau_apply(cspec, "e", i, t) is not None:
            return False
    return t == highest_tableau(P.outer)


# -- acceptance bookkeeping -----------------------------------------------

CRITERIA = {
    1: "golden image and energy of the reference element",
    2: "closed form matches the propagated table on the full grid",
    3: "full-width shapes map identically with zero energy",
    4: "inverse closed form round-trips and matches the reverse table",
    5: "crystal axioms hold on every element of every grid crystal",
    6: "branch-highest counts equal the diagram enumeration",
    7: "raising words are stagewise maximal and reach the top",
    8: "highest-element enumerations match the brute-force scan",
    9: "energy is classically flat and steps correctly on 0-arrows",
}
RESULTS = {}


@pytest.fixture
def record():
    def _record(num, ok):
        RESULTS[num] = bool(ok)
        return bool(ok)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not RESULTS:
        # acceptance file not selected for this run; stay quiet
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        if num in RESULTS:
            verdict = "PASS" if RESULTS[num] else "FAIL"
        else:
            verdict = "FAIL (not evaluated)"
        terminalreporter.write_line(f"criterion {num}: {verdict} - {CRITERIA[num]}")
