"""Letters, vector crystals, and column-strict tableaux for types B, C, D.

Letters are integer codes: +i for the letter i, -i for the barred letter,
and 0 for the extra middle letter that only type B has.  A tableau is a
tuple of columns, each column a bottom-to-top tuple of letters; column
heights weakly decrease left to right.  Validity here means "reachable
from a highest tableau by lowering operators"; the classical
semistandardness axioms are not checked independently.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .crystals import E, F, select_position


@lru_cache(maxsize=None)
def _tables(cspec):
    """Letter list, f/e edge maps, and per-letter eps/phi tables."""
    n = cspec.n
    fam = cspec.classical
    letters = list(range(1, n + 1)) + ([0] if fam == "B" else []) + [-i for i in range(n, 0, -1)]
    fmap = {}
    for i in range(1, n):
        fmap[(i, i)] = i + 1
        fmap[(i, -(i + 1))] = -i
    if fam == "D":
        # the two arrows at the fork index
        fmap[(n, n - 1)] = -n
        fmap[(n, n)] = -(n - 1)
    elif fam == "B":
        # chain through the middle letter; gives phi_n(n) = 2
        fmap[(n, n)] = 0
        fmap[(n, 0)] = -n
    else:
        fmap[(n, n)] = -n
    emap = {(i, dst): src for (i, src), dst in fmap.items()}
    eps = {}
    phi = {}
    for c in letters:
        for i in range(1, n + 1):
            d, x = 0, c
            while (i, x) in emap:
                x = emap[(i, x)]
                d += 1
            eps[(i, c)] = d
            d, x = 0, c
            while (i, x) in fmap:
                x = fmap[(i, x)]
                d += 1
            phi[(i, c)] = d
    return tuple(letters), fmap, emap, eps, phi


def letters_of(cspec):
    """All letters of the vector crystal, in display order."""
    return _tables(cspec)[0]


def check_letter(cspec, c):
    if c == 0:
        if cspec.classical != "B":
            raise ValueError(f"letter 0 is only valid for kind B1, not {cspec.kind}")
        return
    if not 1 <= abs(c) <= cspec.n:
        raise ValueError(f"letter {c} outside rank {cspec.n}")


def letter_key(cspec, c):
    """Sort key realizing 1 < 2 < ... < n < 0 < nbar < ... < 1bar."""
    check_letter(cspec, c)
    if c > 0:
        return (0, c)
    if c == 0:
        return (1, 0)
    return (2, cspec.n - (-c))


def vector_edge(cspec, direction, i, c):
    """The i-arrow neighbor of a letter in the vector crystal, or None."""
    check_letter(cspec, c)
    if not 1 <= i <= cspec.n:
        raise ValueError(f"index {i} outside 1..{cspec.n}")
    _, fmap, emap, _, _ = _tables(cspec)
    table = fmap if direction == F else emap
    return table.get((i, c))


def letter_eps_phi(cspec, i, c):
    _, _, _, eps, phi = _tables(cspec)
    return eps[(i, c)], phi[(i, c)]


def reading_word(cols):
    """Column word: columns right to left, each bottom to top."""
    return [c for col in reversed(cols) for c in col]


def shape(cols):
    from .cartan import Partition

    return Partition.from_column_heights(len(col) for col in cols)


def highest_tableau(shape_partition):
    """Tableau with column j filled 1, 2, ..., height(j) from the bottom."""
    return tuple(
        tuple(range(1, h + 1)) for h in shape_partition.column_heights()
    )


def weight(cspec, cols):
    """Epsilon-basis weight: coordinate j counts letters j minus letters j-bar."""
    w = [0] * cspec.n
    for col in cols:
        for c in col:
            if c > 0:
                w[c - 1] += 1
            elif c < 0:
                w[-c - 1] -= 1
    return tuple(w)


def tableau_apply(cspec, direction, i, cols):
    """Crystal operator through the signature rule on the column word."""
    if not 1 <= i <= cspec.n:
        raise ValueError(f"index {i} outside 1..{cspec.n}")
    positions = []
    pairs = []
    for cj in range(len(cols) - 1, -1, -1):
        for cy in range(len(cols[cj])):
            positions.append((cj, cy))
            pairs.append(letter_eps_phi(cspec, i, cols[cj][cy]))
    pos = select_position(pairs, direction)
    if pos is None:
        return None
    cj, cy = positions[pos]
    c2 = vector_edge(cspec, direction, i, cols[cj][cy])
    assert c2 is not None
    col = cols[cj][:cy] + (c2,) + cols[cj][cy + 1 :]
    return cols[:cj] + (col,) + cols[cj + 1 :]


def tableau_eps_phi(cspec, i, cols):
    minus = plus = 0
    for cj in range(len(cols) - 1, -1, -1):
        for c in cols[cj]:
            e, p = letter_eps_phi(cspec, i, c)
            if plus >= e:
                plus = plus - e + p
            else:
                minus += e - plus
                plus = p
    return minus, plus


class TableauCrystal:
    """Classical crystal on tableaux of the given Cartan family, with a
    per-instance operator cache.  Satisfies the factor-crystal interface."""

    def __init__(self, cspec):
        self.cspec = cspec
        self.indices = cspec.classical_indices
        self._ops = {}

    def apply(self, direction, i, cols):
        key = (direction, i, cols)
        try:
            return self._ops[key]
        except KeyError:
            out = tableau_apply(self.cspec, direction, i, cols)
            self._ops[key] = out
            return out

    def eps_phi(self, i, cols):
        return tableau_eps_phi(self.cspec, i, cols)

    def weight(self, cols):
        return weight(self.cspec, cols)

    def serialize(self, cols):
        return {"kind": "tableau", "cols": [list(col) for col in cols]}

    def element_key(self, cols):
        return json.dumps(self.serialize(cols), separators=(",", ":"))


def tableau_from_json(obj):
    if obj.get("kind") != "tableau":
        raise ValueError(f"not a tableau element: {obj}")
    return tuple(tuple(int(c) for c in col) for col in obj["cols"])
