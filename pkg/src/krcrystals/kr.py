"""The finite affine crystals themselves.

Two realizations: KRCrystal carries a general one as the union of its
classical tableau components, with the affine operators conjugated through
the diagram involution; CoordCrystal carries the one-row family in
coordinates (x_1..x_n, optional x_0, xbar_n..xbar_1) with closed-form
affine operators.  Both satisfy the factor-crystal interface of
crystals.py with the full index set 0..n.
"""

from __future__ import annotations

import json

from . import tableaux
from .cartan import Partition, classical_weights, partition_to_weight
from .crystals import (
    CapExceeded,
    E,
    F,
    apply_word,
    generate_component,
    raise_to_highest,
    reversed_word,
)
from .pmdiag import phi, phi_inv, pm_stats, s_map, enumerate_pm

LEFT = "LEFT"
RIGHT = "RIGHT"


def _pos(v):
    return v if v > 0 else 0


def _neg(v):
    return v if v < 0 else 0


class CoordCrystal:
    """One-row KR crystal of width l in coordinates.

    Elements are (x, x0, xbar) with x and xbar index-ordered length-n
    tuples; x0 is 0 except for kind B1 where it may be 1.
    """

    def __init__(self, cspec, l):
        self.cspec = cspec
        self.l = l
        self.indices = cspec.index_set
        self._ops = {}

    # -- element plumbing ------------------------------------------------

    def element(self, x, xbar, x0=0):
        v = (tuple(x), int(x0), tuple(xbar))
        self.check(v)
        return v

    def check(self, v):
        x, x0, xbar = v
        n = self.cspec.n
        if len(x) != n or len(xbar) != n:
            raise ValueError(f"coordinate vectors must have length {n}: {v}")
        if any(a < 0 for a in x + xbar) or x0 < 0:
            raise ValueError(f"negative coordinate in {v}")
        total = sum(x) + sum(xbar) + x0
        if total != self.l:
            raise ValueError(f"coordinates sum to {total}, expected {self.l}")
        fam = self.cspec.classical
        if fam == "B":
            if x0 > 1:
                raise ValueError(f"x0 must be 0 or 1, got {x0}")
        elif x0 != 0:
            raise ValueError(f"x0 is only carried by kind B1, got {x0}")
        if fam == "D" and x[n - 1] > 0 and xbar[n - 1] > 0:
            raise ValueError(f"x_n and xbar_n cannot both be positive: {v}")

    def u0(self):
        n = self.cspec.n
        return ((self.l,) + (0,) * (n - 1), 0, (0,) * n)

    def elements(self):
        """Every element, canonically sorted."""
        n = self.cspec.n
        fam = self.cspec.classical
        out = []
        for x0 in (0, 1) if fam == "B" else (0,):
            for combo in _compositions(self.l - x0, 2 * n):
                x, xbar = combo[:n], combo[n:]
                if fam == "D" and x[n - 1] > 0 and xbar[n - 1] > 0:
                    continue
                out.append((x, x0, xbar))
        out.sort(key=self.element_key)
        return out

    def serialize(self, v):
        x, x0, xbar = v
        obj = {"kind": "coord", "x": list(x), "xbar": list(reversed(xbar))}
        if self.cspec.classical == "B":
            obj["x0"] = x0
        return obj

    def element_key(self, v):
        return json.dumps(self.serialize(v), separators=(",", ":"))

    def from_json(self, obj):
        if obj.get("kind") != "coord":
            raise ValueError(f"not a coordinate element: {obj}")
        return self.element(obj["x"], list(reversed(obj["xbar"])), obj.get("x0", 0))

    # -- crystal structure -----------------------------------------------

    def weight(self, v):
        x, _, xbar = v
        return tuple(a - b for a, b in zip(x, xbar))

    def eps_phi(self, i, v):
        x, x0, xbar = v
        n = self.cspec.n
        if i == 0:
            return x[0] + _pos(x[1] - xbar[1]), xbar[0] + _pos(xbar[1] - x[1])
        if i < n:
            return (
                xbar[i - 1] + _pos(x[i] - xbar[i]),
                x[i - 1] + _pos(xbar[i] - x[i]),
            )
        fam = self.cspec.classical
        if fam == "D":
            return xbar[n - 2] + xbar[n - 1], x[n - 2] + x[n - 1]
        if fam == "B":
            return 2 * xbar[n - 1] + x0, 2 * x[n - 1] + x0
        return xbar[n - 1], x[n - 1]

    def apply(self, direction, i, v):
        key = (direction, i, v)
        try:
            return self._ops[key]
        except KeyError:
            out = self._apply(direction, i, v)
            self._ops[key] = out
            return out

    def _apply(self, direction, i, v):
        if i == 0:
            return self._apply0(direction, v)
        # classical indices go through the one-row tableau view
        cols = coord_to_tableau(self.cspec, v)
        out = tableaux.tableau_apply(self.cspec, direction, i, cols)
        if out is None:
            return None
        return tableau_to_coord(self.cspec, self.l, out)

    def _apply0(self, direction, v):
        x, x0, xbar = v
        eps, phi0 = self.eps_phi(0, v)
        x, xbar = list(x), list(xbar)
        if direction == E:
            if eps == 0:
                return None
            if x[1] > xbar[1]:
                x[1] -= 1
                xbar[0] += 1
            else:
                x[0] -= 1
                xbar[1] += 1
        else:
            if phi0 == 0:
                return None
            if x[1] >= xbar[1]:
                x[1] += 1
                xbar[0] -= 1
            else:
                x[0] += 1
                xbar[1] -= 1
        out = (tuple(x), x0, tuple(xbar))
        self.check(out)
        return out


def _compositions(total, parts):
    """All nonnegative integer tuples of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def coord_to_tableau(cspec, v):
    """The element as a single-row tableau, letters in display order."""
    x, x0, xbar = v
    n = cspec.n
    row = []
    for i in range(1, n + 1):
        row.extend([i] * x[i - 1])
    row.extend([0] * x0)
    for i in range(n, 0, -1):
        row.extend([-i] * xbar[i - 1])
    return tuple((c,) for c in row)


def tableau_to_coord(cspec, l, cols):
    """Inverse of coord_to_tableau: letter counts of a one-row tableau."""
    n = cspec.n
    x = [0] * n
    xbar = [0] * n
    x0 = 0
    count = 0
    for col in cols:
        if len(col) != 1:
            raise ValueError(f"not a one-row tableau: {cols}")
        c = col[0]
        count += 1
        if c > 0:
            x[c - 1] += 1
        elif c < 0:
            xbar[-c - 1] += 1
        else:
            x0 += 1
    if count != l:
        raise ValueError(f"tableau has {count} cells, expected {l}")
    return (tuple(x), x0, tuple(xbar))


def coord_apply(cspec, l, direction, i, v):
    """Module-level convenience over a throwaway CoordCrystal."""
    return CoordCrystal(cspec, l)._apply(direction, i, v)


def coord_eps_phi(cspec, l, i, v):
    return CoordCrystal(cspec, l).eps_phi(i, v)


class KRCrystal:
    """A KR crystal as the disjoint union of its classical tableau
    components, with the affine pair of operators defined by conjugating
    index 1 through the diagram involution."""

    def __init__(self, spec, cap=200000):
        self.spec = spec
        self.cspec = spec.cartan
        self.indices = self.cspec.index_set
        self.tcrystal = tableaux.TableauCrystal(self.cspec)
        self._sigma = {}
        self._ops = {}
        self.components = {}
        seen = {}
        for lam in classical_weights(spec):
            comp = generate_component(
                self.tcrystal, tableaux.highest_tableau(lam), self.cspec.classical_indices, cap
            )
            for b in comp.elements:
                key = self.tcrystal.element_key(b)
                if key in seen:
                    raise RuntimeError(f"classical components overlap at {key}")
                seen[key] = b
            self.components[lam] = comp
            if len(seen) > cap:
                raise CapExceeded(f"crystal store exceeded cap of {cap} elements")
        self.elements = [seen[k] for k in sorted(seen)]

    def __len__(self):
        return len(self.elements)

    def element_set(self):
        if not hasattr(self, "_eset"):
            self._eset = frozenset(self.elements)
        return self._eset

    def u0(self):
        return tableaux.highest_tableau(Partition([self.spec.k] * self.spec.r))

    def component_of(self, b):
        """The classical highest weight whose component contains b."""
        for lam, comp in self.components.items():
            if b in comp:
                return lam
        raise KeyError(f"element not in store: {b}")

    def sigma(self, b):
        """The involution swapping the two affine endpoints; memoized."""
        try:
            return self._sigma[b]
        except KeyError:
            pass
        n = self.cspec.n
        h, word = raise_to_highest(self.tcrystal, b, self.cspec.branch_indices)
        P = phi_inv(h, n)
        Q = s_map(P, self.spec.r, self.spec.k)
        out = apply_word(self.tcrystal, F, reversed_word(word), phi(Q, n))
        if out is None:
            raise RuntimeError(f"lowering replay failed for {b}")
        self._sigma[b] = out
        return out

    def affine_apply(self, direction, b):
        """The index-0 operator: conjugate index 1 through sigma."""
        inner = self.tcrystal.apply(direction, 1, self.sigma(b))
        if inner is None:
            return None
        return self.sigma(inner)

    def apply(self, direction, i, b):
        if i != 0:
            return self.tcrystal.apply(direction, i, b)
        key = (direction, 0, b)
        try:
            return self._ops[key]
        except KeyError:
            out = self.affine_apply(direction, b)
            self._ops[key] = out
            return out

    def eps_phi(self, i, b):
        if i == 0:
            return tableaux.tableau_eps_phi(self.cspec, 1, self.sigma(b))
        return tableaux.tableau_eps_phi(self.cspec, i, b)

    def weight(self, b):
        return tableaux.weight(self.cspec, b)

    def serialize(self, b):
        return self.tcrystal.serialize(b)

    def element_key(self, b):
        return self.tcrystal.element_key(b)


def build_kr(spec, cap=200000):
    """Construct the full crystal store for a KR label."""
    return KRCrystal(spec, cap)


def sigma(store, b):
    return store.sigma(b)


def affine_apply(store, direction, zero, b):
    if zero != 0:
        raise ValueError("the affine operator is only defined for index 0")
    return store.affine_apply(direction, b)


def highest_left_check(spec, mu, x):
    """Whether the pair (highest tableau of mu) ⊗ x is classically highest
    inside B^{r,k} ⊗ B^{1,l}."""
    n = spec.cartan.n
    r = spec.r
    coeffs = partition_to_weight(mu)
    xs, x0, xbars = x

    def xi(i):
        if i == n + 1:
            return 0
        return xs[i - 1]

    def xbari(i):
        return xbars[i - 1]

    # the middle letter forces a raise at index n whenever present
    if spec.cartan.classical == "B" and x0 != 0:
        return False
    for i in range(1, n + 1):
        if i >= r + 2 and xi(i) != 0:
            return False
        if (i >= r + 2 or (i - (r + 1)) % 2 == 0) and xbari(i) != 0:
            return False
    for i in range(1, r + 1):
        if (i - r) % 2 != 0:
            continue
        if xi(i + 1) + xbari(i) > coeffs.get(i, 0):
            return False
        if i > 1 and xi(i) > xbari(i):
            return False
    return True


def highest_right_check(spec, l, P):
    """Whether 1^l ⊗ (filled tableau of P) is classically highest inside
    B^{1,l} ⊗ B^{r,k}."""
    st = pm_stats(P, spec.k)
    r = spec.r
    need = 0
    for i in range(r, 0, -2):
        need += st.dot[i] + st.minus[i]
        if i > 1:
            need += st.minus[i] + st.pm[i]
    return need <= l


def _subpartitions(outer):
    """All partitions contained in the given one."""
    rows = outer.rows
    if not rows:
        return [Partition()]
    out = []

    def rec(prefix, i, bound):
        if i == len(rows):
            out.append(Partition(prefix))
            return
        for v in range(min(bound, rows[i]), -1, -1):
            rec(prefix + [v], i + 1, v)

    rec([], 0, rows[0])
    return out


def enumerate_highest(side, spec, l, cap=200000):
    """All classically highest elements of the ordered tensor product.

    LEFT is B^{r,k} ⊗ B^{1,l} with elements (tableau, coord); RIGHT is
    B^{1,l} ⊗ B^{r,k} with elements (coord, tableau).  Canonically sorted.
    """
    cspec = spec.cartan
    n = cspec.n
    coord = CoordCrystal(cspec, l)
    out = []
    if side == LEFT:
        candidates = coord.elements()
        for mu in classical_weights(spec):
            tab = tableaux.highest_tableau(mu)
            for x in candidates:
                if highest_left_check(spec, mu, x):
                    out.append((tab, x))
        out.sort(key=lambda t: (json.dumps(t[0]), coord.element_key(t[1])))
        return out
    if side == RIGHT:
        u = coord.u0()
        seen = set()
        for lam_outer in classical_weights(spec):
            for lam_inner in _subpartitions(lam_outer):
                if cspec.classical == "C" and lam_inner.depth >= n:
                    continue
                for P in enumerate_pm(lam_outer, lam_inner):
                    if highest_right_check(spec, l, P):
                        tab = phi(P, n)
                        if tab in seen:
                            raise RuntimeError(f"fill map collided on {P!r}")
                        seen.add(tab)
                        out.append((u, tab))
        out.sort(key=lambda t: json.dumps(t[1]))
        return out
    raise ValueError(f"side must be LEFT or RIGHT, got {side!r}")
