"""Classical root-system data, partitions, and labels for the supported
affine families.

Three families are supported, named by their affine kind:

* ``D1``    (classical subalgebra D_n, n >= 4)
* ``B1``    (classical subalgebra B_n, n >= 3)
* ``A2ODD`` (classical subalgebra C_n, n >= 3)

Index sets: I = {0, ..., n}, I0 = {1, ..., n}.  Weights live in the
orthogonal epsilon-basis as length-n integer vectors, so dominant weights
are partitions read off directly.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import NamedTuple

D1 = "D1"
B1 = "B1"
A2ODD = "A2ODD"

KINDS = (D1, B1, A2ODD)

# classical family realized on the index set {1, ..., n}
_CLASSICAL = {D1: "D", B1: "B", A2ODD: "C"}

# CLI spellings
KIND_ALIASES = {"d1": D1, "b1": B1, "a2": A2ODD}


class CartanSpec(NamedTuple):
    kind: str
    n: int

    @property
    def classical(self):
        """One of "B", "C", "D": the family of the classical subalgebra."""
        return _CLASSICAL[self.kind]

    @property
    def index_set(self):
        return tuple(range(0, self.n + 1))

    @property
    def classical_indices(self):
        return tuple(range(1, self.n + 1))

    @property
    def branch_indices(self):
        """The index subset {2, ..., n} used for branching to rank n-1."""
        return tuple(range(2, self.n + 1))

    def max_row(self):
        """Largest non-spin row index usable as r in a KR label."""
        if self.kind == D1:
            return self.n - 2
        if self.kind == B1:
            return self.n - 1
        return self.n


def cartan(kind, n):
    """Validated CartanSpec. Kind D1 needs n >= 4, the others n >= 3."""
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
    low = 4 if kind == D1 else 3
    if n < low:
        raise ValueError(f"rank n={n} too small for kind {kind} (needs n >= {low})")
    return CartanSpec(kind, int(n))


class KRSpec(NamedTuple):
    cartan: CartanSpec
    r: int
    k: int


def kr_spec(cspec, r, k):
    """Validated KR label (r, k) over a CartanSpec.

    Spin rows are rejected: 1 <= r <= n-2 for D1, n-1 for B1, n for A2ODD.
    """
    rmax = cspec.max_row()
    if not 1 <= r <= rmax:
        raise ValueError(
            f"row index r={r} out of range 1..{rmax} for {cspec.kind} with n={cspec.n}"
        )
    if k < 1:
        raise ValueError(f"width k={k} must be >= 1")
    return KRSpec(cspec, int(r), int(k))


class Partition:
    """A weakly decreasing tuple of row lengths; trailing zeros stripped."""

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        rows = tuple(int(x) for x in rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows not weakly decreasing: {rows}")
        if rows and rows[-1] < 0:
            raise ValueError(f"negative row length in {rows}")
        self.rows = rows

    @classmethod
    def from_column_heights(cls, heights):
        """Partition whose column heights are the given multiset (zeros ignored)."""
        heights = [h for h in heights if h > 0]
        if not heights:
            return cls()
        top = max(heights)
        return cls(sum(1 for h in heights if h >= i) for i in range(1, top + 1))

    def column_heights(self, width=None):
        """Heights of columns 1..width (default: number of nonempty columns)."""
        if width is None:
            width = self.rows[0] if self.rows else 0
        return tuple(sum(1 for row in self.rows if row >= j) for j in range(1, width + 1))

    def contains(self, other):
        """True when the other diagram fits inside this one."""
        get = lambda rows, i: rows[i] if i < len(rows) else 0
        return all(get(other.rows, i) <= get(self.rows, i) for i in range(len(other.rows)))

    def row(self, i):
        """Length of row i (1-based); 0 past the bottom."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    @property
    def first(self):
        return self.rows[0] if self.rows else 0

    @property
    def depth(self):
        return len(self.rows)

    def size(self):
        return sum(self.rows)

    def weight_vec(self, n):
        """The partition as a length-n weight in the epsilon-basis."""
        if len(self.rows) > n:
            raise ValueError(f"partition {self.rows} deeper than rank {n}")
        return tuple(self.rows[i] if i < len(self.rows) else 0 for i in range(n))

    def to_json(self):
        return list(self.rows)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.rows == other.rows

    def __hash__(self):
        return hash(("Partition", self.rows))

    def __lt__(self, other):
        return self.rows < other.rows

    def __repr__(self):
        return f"Partition({list(self.rows)})"


def is_horizontal_strip(outer, inner):
    """True when inner is contained in outer and outer/inner has at most one
    cell per column, i.e. outer_{i+1} <= inner_i for every row."""
    if not outer.contains(inner):
        return False
    for i in range(1, len(outer.rows) + 1):
        if outer.row(i + 1) > inner.row(i):
            return False
    return True


def pairing(cspec, i, w):
    """Evaluate <h_i, w> for a classical index i on an epsilon-basis weight."""
    n = cspec.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside 1..{n}")
    if len(w) != n:
        raise ValueError(f"weight {w} has length {len(w)}, expected {n}")
    if i < n:
        return w[i - 1] - w[i]
    fam = cspec.classical
    if fam == "D":
        return w[n - 2] + w[n - 1]
    if fam == "B":
        return 2 * w[n - 1]
    return w[n - 1]


def classical_weights(spec):
    """All classical components of the KR crystal labelled by spec.

    Each component is the partition whose k column heights are drawn from
    {r, r-2, r-4, ...} down to 0 or 1.  Sorted, duplicate-free.
    """
    heights = list(range(spec.r, -1, -2))
    out = {
        Partition.from_column_heights(combo)
        for combo in combinations_with_replacement(heights, spec.k)
    }
    return sorted(out, key=lambda p: p.rows)


def weight_to_partition(coeffs, cspec=None):
    """Partition with coeffs[i] columns of height i.

    When a CartanSpec is supplied, indices beyond its largest non-spin row
    are rejected.
    """
    heights = []
    for i, m in coeffs.items():
        if i < 1 or m < 0:
            raise ValueError(f"bad fundamental-weight coefficient {i}: {m}")
        if cspec is not None and i > cspec.max_row():
            raise ValueError(f"index {i} is a spin or out-of-range node for {cspec}")
        heights.extend([i] * m)
    return Partition.from_column_heights(heights)


def partition_to_weight(p):
    """Inverse of weight_to_partition: map i -> number of height-i columns."""
    out = {}
    for h in p.column_heights():
        out[h] = out.get(h, 0) + 1
    return {i: out[i] for i in sorted(out)}
