"""KR crystal stores: coordinate one-row crystals, the diagram involution,
the affine operator pair, and highest-element characterizations."""

import itertools
import random

import pytest

from conftest import GRID, get_coord, get_spec, get_store
from krcrystals import (
    E,
    F,
    LEFT,
    RIGHT,
    TensorCrystal,
    cartan,
    classical_weights,
    enumerate_highest,
    enumerate_pm,
    highest_left_check,
    highest_right_check,
    kr_spec,
)
from krcrystals.cartan import Partition
from krcrystals.kr import (
    CoordCrystal,
    _subpartitions,
    coord_to_tableau,
    tableau_to_coord,
)
from krcrystals.pmdiag import phi, phi_inv, pm_stats
from krcrystals.tableaux import highest_tableau, tableau_eps_phi


def test_element_validation():
    c = CoordCrystal(cartan("D1", 4), 2)
    c.element((1, 0, 0, 1), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        c.element((1, 0, 0), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        c.element((1, 0, 0, 0), (0, 0, 0, 0))  # sums to 1, not 2
    with pytest.raises(ValueError):
        c.element((1, 0, 0, 0), (0, 0, 0, 0), x0=1)  # x0 only for the odd family
    with pytest.raises(ValueError):
        c.element((1, 0, 0, 1), (0, 0, 0, 1))  # both top coordinates positive
    b = CoordCrystal(cartan("B1", 3), 2)
    b.element((1, 0, 0), (0, 0, 0), x0=1)
    with pytest.raises(ValueError):
        b.element((0, 0, 0), (0, 0, 0), x0=2)


def test_element_counts():
    assert len(CoordCrystal(cartan("D1", 4), 1).elements()) == 8
    assert len(CoordCrystal(cartan("B1", 3), 1).elements()) == 7
    assert len(CoordCrystal(cartan("A2ODD", 3), 1).elements()) == 6
    assert len(CoordCrystal(cartan("D1", 4), 2).elements()) == 35
    assert len(CoordCrystal(cartan("B1", 3), 2).elements()) == 27
    assert len(CoordCrystal(cartan("A2ODD", 3), 2).elements()) == 21


def test_serialize_reverses_bar_block():
    c = CoordCrystal(cartan("D1", 4), 2)
    v = c.element((0, 1, 0, 0), (0, 0, 0, 1))
    assert c.serialize(v) == {"kind": "coord", "x": [0, 1, 0, 0], "xbar": [1, 0, 0, 0]}
    assert c.from_json(c.serialize(v)) == v
    b = CoordCrystal(cartan("B1", 3), 1)
    w = b.element((0, 0, 0), (0, 0, 0), x0=1)
    assert b.serialize(w) == {"kind": "coord", "x": [0, 0, 0], "xbar": [0, 0, 0], "x0": 1}


def test_conversion_roundtrip():
    for kind, n in (("D1", 4), ("B1", 3), ("A2ODD", 3)):
        cspec = cartan(kind, n)
        for l in (1, 2):
            c = CoordCrystal(cspec, l)
            for v in c.elements():
                cols = coord_to_tableau(cspec, v)
                assert tableau_to_coord(cspec, l, cols) == v
                # letters appear in display order
                assert len(cols) == l


def test_classical_ops_agree_with_tableau_route():
    # eps/phi come from closed formulas while apply routes through the
    # tableau view, so comparing them crosses two implementations
    for kind, n in (("D1", 4), ("B1", 3), ("A2ODD", 3)):
        cspec = cartan(kind, n)
        for l in (1, 2):
            c = CoordCrystal(cspec, l)
            for v in c.elements():
                cols = coord_to_tableau(cspec, v)
                for i in cspec.classical_indices:
                    assert c.eps_phi(i, v) == tableau_eps_phi(cspec, i, cols)


def test_affine_gates_match_operator_counts():
    for kind, n in (("D1", 4), ("B1", 3), ("A2ODD", 3)):
        cspec = cartan(kind, n)
        c = CoordCrystal(cspec, 2)
        for v in c.elements():
            eps, phi0 = c.eps_phi(0, v)
            up, w = 0, v
            while (w := c.apply(E, 0, w)) is not None:
                up += 1
            down, w = 0, v
            while (w := c.apply(F, 0, w)) is not None:
                down += 1
            assert (eps, phi0) == (up, down)


def test_store_counts_and_components():
    store = get_store("D1", 4, 2, 1)
    assert len(store) == 29
    assert {lam.rows: len(c.elements) for lam, c in store.components.items()} == {
        (): 1,
        (1, 1): 28,
    }
    store2 = get_store("D1", 4, 2, 2)
    assert len(store2) == 329
    assert {lam.rows: len(c.elements) for lam, c in store2.components.items()} == {
        (): 1,
        (1, 1): 28,
        (2, 2): 300,
    }
    assert len(get_store("B1", 3, 2, 1)) == 22
    assert len(get_store("A2ODD", 3, 2, 1)) == 15
    assert len(get_store("A2ODD", 3, 3, 1)) == 20


def test_store_top_element():
    store = get_store("D1", 4, 2, 2)
    assert store.u0() == ((1, 2), (1, 2))
    assert store.component_of(store.u0()) == Partition((2, 2))
    assert store.component_of(()) == Partition(())


def test_involution_golden():
    store = get_store("D1", 4, 2, 1)
    assert store.sigma(((1, 2),)) == ((2, -1),)
    assert store.sigma(((2, -1),)) == ((1, 2),)


def test_involution_squares_to_identity():
    for kind, n, r, k in (("D1", 4, 2, 1), ("B1", 3, 2, 1), ("A2ODD", 3, 3, 1)):
        store = get_store(kind, n, r, k)
        for b in store.elements:
            assert store.sigma(store.sigma(b)) == b


def test_involution_commutes_with_branch_indices():
    for kind, n, r, k in (("D1", 4, 2, 1), ("A2ODD", 3, 2, 2)):
        store = get_store(kind, n, r, k)
        for b in store.elements:
            for j in store.cspec.branch_indices:
                up = store.apply(E, j, b)
                lhs = store.sigma(up) if up is not None else None
                rhs = store.apply(E, j, store.sigma(b))
                assert lhs == rhs


def test_affine_raise_weight_shift():
    # raising at the affine index adds a vector whose classical part is
    # (-1, -1, 0, ...) in the epsilon coordinates
    store = get_store("D1", 4, 2, 1)
    n = store.cspec.n
    for b in store.elements:
        up = store.apply(E, 0, b)
        if up is None:
            continue
        delta = tuple(a - c for a, c in zip(store.weight(up), store.weight(b)))
        assert delta == (-1, -1) + (0,) * (n - 2)


def test_affine_eps_counts():
    store = get_store("B1", 3, 2, 1)
    for b in store.elements:
        eps, phi0 = store.eps_phi(0, b)
        up, c, count = 0, b, 0
        while (c := store.apply(E, 0, c)) is not None:
            up += 1
        down, c = 0, b
        while (c := store.apply(F, 0, c)) is not None:
            down += 1
        assert (eps, phi0) == (up, down)


def test_one_row_store_matches_coordinate_formulas():
    # keystone for the affine pair: the sigma route must reproduce the
    # closed coordinate operators on every one-row crystal up to width 3
    for kind, n in (("D1", 4), ("B1", 3), ("A2ODD", 3)):
        for l in (1, 2, 3):
            spec = kr_spec(cartan(kind, n), 1, l)
            store = get_store(kind, n, 1, l)
            coord = CoordCrystal(spec.cartan, l)
            for v in coord.elements():
                cols = coord_to_tableau(spec.cartan, v)
                for direction in (E, F):
                    got = store.apply(direction, 0, cols)
                    want = coord.apply(direction, 0, v)
                    if want is None:
                        assert got is None, (kind, l, v, direction)
                    else:
                        assert got == coord_to_tableau(spec.cartan, want)


def test_affine_eps_closed_form_on_branch_highest():
    # per-height sign counts determine eps at the affine index in closed
    # form, with even and odd depths following different summations
    def closed_eps0(st, r):
        if r % 2:
            tot = sum(st.dot[j] + 2 * st.plus[j] + st.pm[j] for j in range(1, r + 1, 2))
            return tot - st.plus[1]
        tot = st.dot[r] + 2 * st.plus[r] + st.dot[r - 2]
        for j in range(2, r - 1, 2):
            tot += st.pm[j + 2] + 2 * st.plus[j] + st.dot[j - 2]
        return tot

    for kind, n, r, k in GRID:
        store = get_store(kind, n, r, k)
        for b in store.elements:
            if any(store.apply(E, j, b) is not None for j in store.cspec.branch_indices):
                continue
            P = phi_inv(b, n)
            assert store.eps_phi(0, b)[0] == closed_eps0(pm_stats(P, k), r)


def test_subpartitions():
    got = sorted(p.rows for p in _subpartitions(Partition((2, 1))))
    assert got == [(), (1,), (1, 1), (2,), (2, 1)]
    assert [p.rows for p in _subpartitions(Partition(()))] == [()]


def _brute_highest(spec, l, side):
    store = get_store(spec.cartan.kind, spec.cartan.n, spec.r, spec.k)
    coord = get_coord(spec.cartan.kind, spec.cartan.n, l)
    factors = (coord, store) if side == RIGHT else (store, coord)
    tensor = TensorCrystal(factors)
    pool = (
        itertools.product(coord.elements(), store.elements)
        if side == RIGHT
        else itertools.product(store.elements, coord.elements())
    )
    out = [
        t
        for t in pool
        if all(
            tensor.acting_factor(E, i, t) is None
            for i in spec.cartan.classical_indices
        )
    ]
    return sorted(out, key=tensor.element_key), tensor


def test_highest_enumeration_left_small():
    spec = get_spec("D1", 4, 2, 1)
    brute, tensor = _brute_highest(spec, 1, LEFT)
    got = enumerate_highest(LEFT, spec, 1)
    assert sorted(map(tensor.element_key, got)) == list(map(tensor.element_key, brute))


def test_highest_enumeration_right_small():
    spec = get_spec("A2ODD", 3, 3, 1)
    brute, tensor = _brute_highest(spec, 1, RIGHT)
    got = enumerate_highest(RIGHT, spec, 1)
    assert sorted(map(tensor.element_key, got)) == list(map(tensor.element_key, brute))


def test_highest_left_check_against_tensor_rule():
    spec = get_spec("B1", 3, 2, 2)
    store = get_store("B1", 3, 2, 2)
    coord = get_coord("B1", 3, 1)
    tensor = TensorCrystal([store, coord])
    for mu in classical_weights(spec):
        tab = highest_tableau(mu)
        for x in coord.elements():
            brute = all(
                tensor.acting_factor(E, i, (tab, x)) is None
                for i in spec.cartan.classical_indices
            )
            assert highest_left_check(spec, mu, x) == brute


def test_highest_right_check_against_tensor_rule():
    spec = get_spec("D1", 4, 2, 2)
    store = get_store("D1", 4, 2, 2)
    coord = get_coord("D1", 4, 1)
    tensor = TensorCrystal([coord, store])
    u = coord.u0()
    n = spec.cartan.n
    for lam_outer in classical_weights(spec):
        for lam_inner in _subpartitions(lam_outer):
            for P in enumerate_pm(lam_outer, lam_inner):
                tab = phi(P, n)
                brute = all(
                    tensor.acting_factor(E, i, (u, tab)) is None
                    for i in spec.cartan.classical_indices
                )
                assert highest_right_check(spec, 1, P) == brute
