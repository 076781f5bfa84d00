"""Combinatorial bijection between the two orderings of a tensor pair,
with local energies.

brute_force_R grows the bijection from the anchor pair by intertwining
every operator; closed_form_R / closed_form_Rinv compute the image of a
classically highest element in closed form, one direction each.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor

from .cartan import partition_to_weight, weight_to_partition
from .crystals import CapExceeded, E, F, TensorCrystal
from .kr import (
    LEFT,
    CoordCrystal,
    build_kr,
    enumerate_highest,
    highest_left_check,
    highest_right_check,
)
from .pmdiag import PMStats, phi, pm_stats, stats_to_diagram
from .tableaux import shape


def _pos(v):
    return v if v > 0 else 0


def _neg(v):
    return v if v < 0 else 0


class RTable:
    """Full bijection table for one ordered pair of crystals."""

    def __init__(self, tensorL, tensorR, forward, energy):
        self.tensorL = tensorL
        self.tensorR = tensorR
        self.forward = forward
        self.energy = energy

    def __len__(self):
        return len(self.forward)

    def rows(self):
        """Canonically ordered plain rows for serialization."""
        keyed = sorted(self.forward, key=self.tensorL.element_key)
        return [
            {
                "src": self.tensorL.serialize(t),
                "dst": self.tensorR.serialize(self.forward[t]),
                "H": self.energy[t],
            }
            for t in keyed
        ]


def _crystal_size(c):
    try:
        return len(c)
    except TypeError:
        return len(c.elements())


def brute_force_R(left, right, cap=200000):
    """Propagate the bijection and energy from the anchor across the
    whole tensor product, checking consistency on every revisit."""
    tl = TensorCrystal([left, right])
    tr = TensorCrystal([right, left])
    seed = (left.u0(), right.u0())
    forward = {seed: (right.u0(), left.u0())}
    energy = {seed: 0}
    queue = deque([seed])
    indices = list(left.indices)
    while queue:
        t = queue.popleft()
        s = forward[t]
        h = energy[t]
        for i in indices:
            for direction in (F, E):
                t2 = tl.apply(direction, i, t)
                s2 = tr.apply(direction, i, s)
                if (t2 is None) != (s2 is None):
                    raise RuntimeError(
                        f"operator mismatch across the bijection at index {i} "
                        f"({direction}) from {tl.element_key(t)}"
                    )
                if t2 is None:
                    continue
                h2 = h
                if i == 0:
                    a = tl.acting_factor(direction, 0, t)
                    b = tr.acting_factor(direction, 0, s)
                    if a == 0 and b == 0:
                        h2 = h + (1 if direction == E else -1)
                    elif a == 1 and b == 1:
                        h2 = h + (-1 if direction == E else 1)
                if t2 in forward:
                    if forward[t2] != s2 or energy[t2] != h2:
                        raise RuntimeError(
                            f"inconsistent revisit at {tl.element_key(t2)}: "
                            f"image or energy disagrees along index {i}"
                        )
                else:
                    if len(forward) >= cap:
                        raise CapExceeded(f"bijection exceeded cap of {cap} pairs")
                    forward[t2] = s2
                    energy[t2] = h2
                    queue.append(t2)
    expected = _crystal_size(left) * _crystal_size(right)
    if len(forward) != expected:
        raise RuntimeError(
            f"tensor product not connected: reached {len(forward)} of {expected}"
        )
    return RTable(tl, tr, forward, energy)


def closed_form_R(spec, l, mu, x):
    """Image and energy of (highest tableau of mu) ⊗ x, computed from the
    coordinates alone.  Returns (P, H) with P the sign diagram whose fill
    is the right tensor factor of the image."""
    cspec = spec.cartan
    n, r, k = cspec.n, spec.r, spec.k
    if not highest_left_check(spec, mu, x):
        raise ValueError(f"not classically highest: {mu!r} over {x!r}")
    xs, _, xbars = x

    def xi(i):
        return 0 if i > n else xs[i - 1]

    def xbari(i):
        return xbars[i - 1]

    coeffs = partition_to_weight(mu)
    mu0 = k - mu.first
    st = PMStats(k)
    for i in range(r, -1, -2):
        if i == 0:
            st.dot[0] = xbari(2) - xi(2) - _neg(xi(1) - mu0)
        elif i == r:
            st.dot[r] = xi(r + 1)
        else:
            st.dot[i] = xbari(i + 2) - xi(i + 2)
    for i in range(r, 0, -2):
        st.plus[i] = coeffs.get(i, 0) - xbari(i) - xi(i + 1)
        st.minus[i] = xbari(1) if i == 1 else xi(i)
        if i >= 2:
            st.pm[i] = min(mu0, xi(1)) if i == 2 else xi(i - 1)
    for d in (st.dot, st.plus, st.minus, st.pm):
        for height, v in d.items():
            if v < 0:
                raise RuntimeError(
                    f"negative count {v} at height {height} for {mu!r} over {x!r}"
                )
    width = sum(
        st.dot[i] + st.plus[i] + st.minus[i] + st.pm[i] for i in range(r, 0, -2)
    )
    if r % 2 == 0:
        width += st.dot[0]
    if width != k:
        raise RuntimeError(f"column count {width} != {k} for {mu!r} over {x!r}")
    P = stats_to_diagram(st)
    lam1 = mu.first + xi(1) - xbari(1)
    if r % 2:
        h = lam1 - k - l
    else:
        h = _pos(lam1 - k) - l
    return P, h


def closed_form_Rinv(spec, l, P):
    """Pre-image (mu, x) of the classically highest 1^l ⊗ (fill of P)."""
    cspec = spec.cartan
    n, r, k = cspec.n, spec.r, spec.k
    if not highest_right_check(spec, l, P):
        raise ValueError(f"not classically highest: width-{l} row over {P!r}")
    st = pm_stats(P, k)
    heights = list(range(r, 0, -2))
    s_bal = l - k + sum(st.plus[i] - st.minus[i] for i in heights)

    def pmc(i):
        # the top dot count doubles as the one-past-the-top pm count
        if i == r + 2:
            return st.dot[r]
        return st.pm[i]

    coeffs = {}
    for i in heights:
        if i == 2 and r % 2 == 0:
            coeffs[2] = _neg(s_bal) + pmc(4) + st.plus[2] + st.minus[2] + st.dot[0]
        else:
            low = st.dot[i - 2] if i >= 2 else 0
            coeffs[i] = pmc(i + 2) + st.plus[i] + st.minus[i] + low
    if any(v < 0 for v in coeffs.values()):
        raise RuntimeError(f"negative row multiplicity for {P!r}")
    if sum(coeffs.values()) > k:
        raise RuntimeError(f"pre-image wider than {k} columns for {P!r}")
    mu = weight_to_partition(coeffs, cspec)
    xs = [0] * n
    for i in range(1, n + 1):
        if i == 1:
            if r % 2 == 0:
                xs[0] = _pos(s_bal) + pmc(2)
            else:
                xs[0] = s_bal + st.minus[1]
        elif (i - r) % 2 == 0:
            xs[i - 1] = st.minus[i]
        else:
            xs[i - 1] = pmc(i + 1)
    xbars = [0] * n
    for i in heights:
        if i == 2 and r % 2 == 0:
            # s_bal's negative part lands here so the coordinate sum closes
            xbars[1] = st.minus[2] + st.dot[0] + _neg(s_bal)
        else:
            low = st.dot[i - 2] if i >= 2 else 0
            xbars[i - 1] = st.minus[i] + low
    x0 = l - sum(xs) - sum(xbars)
    if min(xs) < 0 or min(xbars) < 0 or x0 < 0:
        raise RuntimeError(f"negative coordinate in pre-image of {P!r}")
    v = CoordCrystal(cspec, l).element(xs, xbars, x0)
    return mu, v


def verify_theorem(spec, l, cap=200000, threads=1):
    """Check the closed forms against the propagated bijection on every
    classically highest element; returns a report dict with any
    mismatches listed."""
    cspec = spec.cartan
    left = build_kr(spec, cap)
    right = CoordCrystal(cspec, l)
    table = brute_force_R(left, right, cap)
    highs = enumerate_highest(LEFT, spec, l, cap)
    u = right.u0()

    def check(pair):
        tab, xv = pair
        found = []
        flags = []
        mu = shape(tab)
        t = (tab, xv)
        name = table.tensorL.element_key(t)
        P, h = closed_form_R(spec, l, mu, xv)
        img = (u, phi(P, cspec.n))
        got = table.forward[t]
        if got != img:
            found.append(
                {
                    "element": name,
                    "issue": "image",
                    "closed": table.tensorR.element_key(img),
                    "brute": table.tensorR.element_key(got),
                }
            )
        if table.energy[t] != h:
            found.append(
                {
                    "element": name,
                    "issue": "energy",
                    "closed": h,
                    "brute": table.energy[t],
                }
            )
        mu2, x2 = closed_form_Rinv(spec, l, P)
        if mu2 != mu or x2 != xv:
            found.append({"element": name, "issue": "round_trip"})
        if spec.r % 2 == 0:
            alt = _pos(xv[0][0] - (spec.k - mu.first)) - l
            if alt != h:
                flags.append({"element": name, "h": h, "alt": alt})
        return found, flags

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(check, highs))
    else:
        results = [check(p) for p in highs]
    mismatches = []
    h_flags = []
    for found, flags in results:
        mismatches.extend(found)
        h_flags.extend(flags)
    return {
        "kind": cspec.kind,
        "n": cspec.n,
        "r": spec.r,
        "k": spec.k,
        "l": l,
        "left_size": _crystal_size(left),
        "right_size": _crystal_size(right),
        "pairs": len(table),
        "highest": len(highs),
        "mismatches": mismatches,
        "h_disagreements": h_flags,
        "ok": not mismatches and not h_flags,
    }
