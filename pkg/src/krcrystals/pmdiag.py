"""Sign diagrams on nested partition triples, their bijection with
branch-highest tableaux, the sign-swap involution, raising words, and the
index-1 operators on diagram pairs.

A diagram is inner ⊆ middle ⊆ outer with both skews horizontal strips.
Per column (conjugate heights o >= m >= l): a + sits at height m when
m = l+1, a - sits at height o when o = m+1.  Statistics are indexed by
the outer height of the column carrying the sign combination.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

from .cartan import Partition, is_horizontal_strip
from .crystals import E, F


class PMDiagram:
    """Nested partitions inner ⊆ middle ⊆ outer, both skews horizontal strips."""

    __slots__ = ("outer", "middle", "inner")

    def __init__(self, outer, middle, inner):
        if not (is_horizontal_strip(outer, middle) and is_horizontal_strip(middle, inner)):
            raise ValueError(
                f"not nested horizontal strips: {inner.rows} ⊆ {middle.rows} ⊆ {outer.rows}"
            )
        self.outer = outer
        self.middle = middle
        self.inner = inner

    def column_triples(self, width=None):
        """Per column, the (outer, middle, inner) conjugate heights."""
        if width is None:
            width = self.outer.first
        o = self.outer.column_heights(width)
        m = self.middle.column_heights(width)
        l = self.inner.column_heights(width)
        return list(zip(o, m, l))

    def check_inner_height(self, n):
        """Reject inner columns of full height n (the C-family constraint)."""
        if self.inner.depth >= n:
            raise ValueError(f"inner shape {self.inner.rows} has a height-{n} column")

    def to_json(self):
        return {
            "outer": self.outer.to_json(),
            "middle": self.middle.to_json(),
            "inner": self.inner.to_json(),
        }

    def __eq__(self, other):
        return (
            isinstance(other, PMDiagram)
            and self.outer == other.outer
            and self.middle == other.middle
            and self.inner == other.inner
        )

    def __hash__(self):
        return hash(("PMDiagram", self.outer.rows, self.middle.rows, self.inner.rows))

    def __repr__(self):
        return (
            f"PMDiagram(outer={list(self.outer.rows)}, middle={list(self.middle.rows)}, "
            f"inner={list(self.inner.rows)})"
        )


def diagram_from_json(obj):
    return PMDiagram(
        Partition(obj["outer"]), Partition(obj["middle"]), Partition(obj["inner"])
    )


def enumerate_pm(outer, inner):
    """All diagrams with the given outer and inner shapes, duplicate-free.

    Row i of the middle ranges over the interval forced by containment and
    the two strip conditions; the product of the intervals is exhaustive.
    """
    if not outer.contains(inner):
        return []
    depth = len(outer.rows)
    ranges = []
    for i in range(1, depth + 1):
        lo = max(inner.row(i), outer.row(i + 1))
        hi = min(outer.row(i), inner.row(i - 1) if i > 1 else outer.row(1))
        if lo > hi:
            return []
        ranges.append(range(lo, hi + 1))
    out = []
    for rows in product(*ranges):
        out.append(PMDiagram(outer, Partition(rows), inner))
    return out


class PMStats:
    """Per-height sign counts of a diagram of width k.

    dot[i], plus[i], minus[i], pm[i] count columns of outer height i that
    carry nothing, a single +, a single -, or both; dot[0] counts the
    absent columns, k minus the number of nonempty ones.
    """

    __slots__ = ("k", "dot", "plus", "minus", "pm")

    def __init__(self, k):
        self.k = k
        self.dot = defaultdict(int)
        self.plus = defaultdict(int)
        self.minus = defaultdict(int)
        self.pm = defaultdict(int)

    def total(self):
        return (
            sum(self.dot.values())
            + sum(self.plus.values())
            + sum(self.minus.values())
            + sum(self.pm.values())
        )

    def _norm(self):
        clean = lambda d: {h: c for h, c in sorted(d.items()) if c}
        return (self.k, clean(self.dot), clean(self.plus), clean(self.minus), clean(self.pm))

    def __eq__(self, other):
        return isinstance(other, PMStats) and self._norm() == other._norm()

    def __repr__(self):
        k, dot, plus, minus, pm = self._norm()
        return f"PMStats(k={k}, dot={dot}, plus={plus}, minus={minus}, pm={pm})"


def pm_stats(P, k):
    """Count the sign combinations of P per outer height, inside width k."""
    if P.outer.first > k:
        raise ValueError(f"diagram outer {P.outer.rows} wider than k={k}")
    st = PMStats(k)
    for o, m, l in P.column_triples():
        has_plus = m == l + 1
        has_minus = o == m + 1
        if has_plus and has_minus:
            st.pm[o] += 1
        elif has_plus:
            st.plus[o] += 1
        elif has_minus:
            st.minus[o] += 1
        else:
            st.dot[o] += 1
    st.dot[0] = k - P.outer.first
    return st


def stats_to_diagram(st):
    """The unique diagram realizing the given counts.

    Columns are laid out tallest outer height first; within one height the
    order dot, +, -, ∓ keeps middle and inner heights weakly decreasing.
    """
    outer_h, middle_h, inner_h = [], [], []
    for h in sorted(
        set(st.dot) | set(st.plus) | set(st.minus) | set(st.pm), reverse=True
    ):
        if h == 0:
            continue
        for o, m, l, count in (
            (h, h, h, st.dot[h]),
            (h, h, h - 1, st.plus[h]),
            (h, h - 1, h - 1, st.minus[h]),
            (h, h - 1, h - 2, st.pm[h]),
        ):
            outer_h.extend([o] * count)
            middle_h.extend([m] * count)
            inner_h.extend([l] * count)
    return PMDiagram(
        Partition.from_column_heights(outer_h),
        Partition.from_column_heights(middle_h),
        Partition.from_column_heights(inner_h),
    )


def phi(P, n):
    """Fill a diagram into its branch-highest tableau of shape outer(P).

    Full-height columns whose + sits at height n are filled 1..n and are
    skipped by the replacement scan.  Every other column is filled with the
    string 2, 3, ... from the bottom, topped by a 1-bar when the column
    carries a -.  Then the + marks are consumed left to right: each one
    advances a single forward scan (columns left to right, cells top to
    bottom) to the first 1-bar, which it rebars to height+1, or to the
    first letter 2, whose consecutive run 2..K it replaces by
    1..h, h+2..K.  The scan pointer never rewinds.
    """
    triples = P.column_triples()
    filled = []
    special = []
    plus_marks = []
    for j, (o, m, l) in enumerate(triples):
        has_minus = o == m + 1
        has_plus = m == l + 1
        if o == n and has_plus and m == n:
            filled.append(list(range(1, n + 1)))
            special.append(True)
            continue
        special.append(False)
        if has_plus:
            plus_marks.append((j, m))
        if has_minus:
            filled.append(list(range(2, o + 1)) + [-1])
        else:
            filled.append(list(range(2, o + 2)))
        if filled[-1] and filled[-1][-1] == n + 1:
            raise ValueError(f"column {j + 1} of {P!r} needs a letter beyond rank {n}")
    order = [
        (j, y)
        for j in range(len(filled))
        if not special[j]
        for y in range(len(filled[j]) - 1, -1, -1)
    ]
    ptr = 0
    for _, h in plus_marks:
        while True:
            if ptr >= len(order):
                raise ValueError(f"replacement scan ran off the tableau for {P!r}")
            j, y = order[ptr]
            c = filled[j][y]
            if c == -1:
                filled[j][y] = -(h + 1)
                ptr += 1
                break
            if c == 2:
                run = 1
                while y + run < len(filled[j]) and filled[j][y + run] == 2 + run:
                    run += 1
                K = run + 1
                if h + 1 > K:
                    raise ValueError(f"replacement string too short in {P!r}")
                filled[j][y : y + run] = list(range(1, h + 1)) + list(
                    range(h + 2, K + 1)
                )
                ptr += 1
                break
            ptr += 1
    return tuple(tuple(col) for col in filled)


def phi_inv(cols, n):
    """The unique diagram filling to the given branch-highest tableau.

    The outer shape and the rank-(n-1) restricted weight pin outer and
    inner; the middle is found by enumeration with a forward check.
    """
    from .tableaux import shape

    outer = shape(cols)
    w = [0] * n
    for col in cols:
        for c in col:
            if c > 0:
                w[c - 1] += 1
            elif c < 0:
                w[-c - 1] -= 1
    lam = w[1:]
    if any(a < b for a, b in zip(lam, lam[1:])) or any(a < 0 for a in lam):
        raise ValueError(f"restricted weight {lam} is not a partition; tableau not branch-highest")
    inner = Partition(lam)
    for P in enumerate_pm(outer, inner):
        if phi(P, n) == cols:
            return P
    raise ValueError(f"no diagram fills to {cols}; input invalid or not branch-highest")


def s_map(P, r, k):
    """The sign-swap involution inside the width-k, depth-r family.

    At each outer height of the right parity, + and - counts are swapped;
    ∓ counts at height h trade places with the dot counts at height h-2
    (height-0 dots meaning absent columns).  Dot columns of full height r
    stay.  The inner shape is preserved.
    """
    st = pm_stats(P, k)
    for d in (st.dot, st.plus, st.minus, st.pm):
        for h, cnt in d.items():
            if cnt and h > r:
                raise ValueError(f"column of height {h} exceeds depth {r}")
            if cnt and h > 0 and (h - r) % 2 != 0:
                raise ValueError(f"column height {h} has wrong parity for depth {r}")
    if st.pm[1]:
        raise ValueError("a height-1 column cannot carry both signs")
    out = PMStats(k)
    out.dot[r] = st.dot[r]
    for h in range(r, 0, -2):
        out.plus[h] = st.minus[h]
        out.minus[h] = st.plus[h]
        if h >= 2:
            out.pm[h] = st.dot[h - 2]
            out.dot[h - 2] = st.pm[h]
    Q = stats_to_diagram(out)
    if Q.inner != P.inner:
        raise RuntimeError(f"inner shape moved under the involution: {P!r} -> {Q!r}")
    return Q


def to_highest_word(P, cspec):
    """Raising word taking the filled tableau of P to the highest element.

    Exponents come from the column counts c_i of the outer shape and the
    sign counts at height i; the word ascends 1..n and then descends with
    the primed exponents.  Zero-exponent stages are kept so that the
    stagewise maximality property is checkable stage by stage.
    """
    n = cspec.n
    fam = cspec.classical
    r = P.outer.depth
    rmax = {"B": n - 1, "C": n, "D": n - 2}[fam]
    if r > rmax:
        raise ValueError(f"outer depth {r} exceeds the bound {rmax} for {cspec.kind}")
    c = defaultdict(int)
    c_plus = defaultdict(int)
    c_minus = defaultdict(int)
    for o, m, l in P.column_triples():
        c[o] += 1
        if m == l + 1:
            c_plus[m] += 1
        if o == m + 1:
            c_minus[o] += 1

    def a(i):
        return (
            sum(c_minus[j] for j in range(1, i))
            + (c[i] - c_plus[i])
            + sum(c[j] + c_minus[j] - c_plus[j] for j in range(i + 1, n + 1))
        )

    def a_prime(i):
        return sum(c_minus[j] for j in range(1, i + 1))

    gamma = 2 if fam == "B" else 1
    gamma_p = 0 if fam == "D" else 1
    word = [(i, a(i)) for i in range(1, n)]
    word.append((n, gamma * a(n)))
    word.append((n - 1, gamma_p * a_prime(n - 1)))
    word.extend((i, a_prime(i)) for i in range(n - 2, 0, -1))
    if any(m < 0 for _, m in word):
        raise ValueError(f"negative exponent for {P!r}; diagram outside the valid family")
    return word


class PMPair:
    """A two-level diagram: an outer diagram P over an inner diagram p with
    inner(P) = outer(p), stored as per-column quintuples of conjugate
    heights (O, MP, L, Mp, I), sorted tallest first."""

    __slots__ = ("cols",)

    def __init__(self, cols):
        cols = tuple(sorted((tuple(q) for q in cols if any(q)), reverse=True))
        for q in cols:
            if q[4] < 0:
                raise ValueError(f"negative height in column {q}")
            for a, b in zip(q, q[1:]):
                if a - b not in (0, 1):
                    raise ValueError(f"column {q} breaks the strip conditions")
        # every level must stay weakly decreasing across columns, or the
        # quintuples do not assemble into nested partitions at all
        for a, b in zip(cols, cols[1:]):
            if any(x < y for x, y in zip(a, b)):
                raise ValueError(f"columns {a} and {b} cannot be ordered")
        self.cols = cols

    @classmethod
    def from_diagrams(cls, P, p):
        if P.inner != p.outer:
            raise ValueError(
                f"levels do not nest: inner {P.inner.rows} vs outer {p.outer.rows}"
            )
        width = P.outer.first
        levels = [
            P.outer.column_heights(width),
            P.middle.column_heights(width),
            P.inner.column_heights(width),
            p.middle.column_heights(width),
            p.inner.column_heights(width),
        ]
        return cls(zip(*levels))

    @property
    def P(self):
        return PMDiagram(
            Partition.from_column_heights(q[0] for q in self.cols),
            Partition.from_column_heights(q[1] for q in self.cols),
            Partition.from_column_heights(q[2] for q in self.cols),
        )

    @property
    def p(self):
        return PMDiagram(
            Partition.from_column_heights(q[2] for q in self.cols),
            Partition.from_column_heights(q[3] for q in self.cols),
            Partition.from_column_heights(q[4] for q in self.cols),
        )

    def __eq__(self, other):
        return isinstance(other, PMPair) and self.cols == other.cols

    def __hash__(self):
        return hash(("PMPair", self.cols))

    def __repr__(self):
        return f"PMPair({list(self.cols)})"


def pair_of_diagram(P):
    """The pair representing the filled tableau of P itself: the inner
    diagram carries a + on top of every column of inner(P)."""
    lam = P.inner
    return PMPair.from_diagrams(P, PMDiagram(lam, lam, Partition(lam.rows[1:])))


def _pairing(cols):
    """Run the three pairing passes; return the unpaired sign positions.

    Passes: each + of p (left to right) takes the leftmost free + of P
    weakly to its left; each - of p takes the rightmost free - of P weakly
    to its left; leftover +'s of p (left to right) take the leftmost free
    - of p.  Returns four lists of column indices, each in left-to-right
    order: free +'s of p, free -'s of P, free -'s of p, free +'s of P.
    """
    P_plus = [j for j, q in enumerate(cols) if q[1] == q[2] + 1]
    P_minus = [j for j, q in enumerate(cols) if q[0] == q[1] + 1]
    p_plus = [j for j, q in enumerate(cols) if q[3] == q[4] + 1]
    p_minus = [j for j, q in enumerate(cols) if q[2] == q[3] + 1]

    free_P_plus = list(P_plus)
    open_p_plus = []
    for j in p_plus:
        cand = [t for t in free_P_plus if t <= j]
        if cand:
            free_P_plus.remove(cand[0])
        else:
            open_p_plus.append(j)
    free_P_minus = list(P_minus)
    open_p_minus = []
    for j in p_minus:
        cand = [t for t in free_P_minus if t <= j]
        if cand:
            free_P_minus.remove(cand[-1])
        else:
            open_p_minus.append(j)
    free_p_minus = list(open_p_minus)
    free_p_plus = []
    for j in open_p_plus:
        if free_p_minus:
            free_p_minus.pop(0)
        else:
            free_p_plus.append(j)
    return free_p_plus, free_P_minus, free_p_minus, free_P_plus


_MOVES = {
    # name: (required sign test, quintuple delta)
    "p_plus_to_P": (lambda q: q[3] == q[4] + 1, (0, 0, -1, -1, 0)),
    "P_minus_to_p": (lambda q: q[0] == q[1] + 1, (0, 1, 1, 0, 0)),
    "p_minus_to_P": (lambda q: q[2] == q[3] + 1, (0, -1, -1, 0, 0)),
    "P_plus_to_p": (lambda q: q[1] == q[2] + 1, (0, 0, 1, 1, 0)),
}


def _move(pp, j, kind):
    test, delta = _MOVES[kind]
    q = pp.cols[j]
    if not test(q):
        raise ValueError(f"column {j} of {pp!r} has no sign for {kind}")
    q2 = tuple(a + d for a, d in zip(q, delta))
    raw = pp.cols[:j] + (q2,) + pp.cols[j + 1 :]
    # a sign hop adds or removes one cell at a row end of each affected
    # level partition; the receiving column is whichever one the re-sorted
    # height multiset of that level puts it in, not necessarily column j
    levels = [sorted((c[t] for c in raw), reverse=True) for t in range(5)]
    return PMPair(zip(*levels))


def _raise1(pp):
    free_p_plus, free_P_minus, _, _ = _pairing(pp.cols)
    if free_p_plus:
        return _move(pp, free_p_plus[-1], "p_plus_to_P")
    if free_P_minus:
        return _move(pp, free_P_minus[0], "P_minus_to_p")
    return None


def _lower1(pp):
    # the lowering move is the unique pre-image under the raising move;
    # candidates are every locally legal single move of the two mirror
    # kinds, checked by replaying the raise
    candidates = [(j, "p_minus_to_P") for j, q in enumerate(pp.cols) if q[2] == q[3] + 1]
    candidates += [(j, "P_plus_to_p") for j, q in enumerate(pp.cols) if q[1] == q[2] + 1]
    for j, kind in candidates:
        try:
            qq = _move(pp, j, kind)
        except ValueError:
            continue
        if _raise1(qq) == pp:
            return qq
    return None


def e1_on_pair(pp, direction):
    """Index-1 raising (E) or lowering (F) on a diagram pair, or None."""
    if direction == E:
        return _raise1(pp)
    if direction == F:
        return _lower1(pp)
    raise ValueError(f"bad direction {direction!r}")


def eps1_of_pair(pp):
    """Number of index-1 raises until annihilation."""
    guard = 2 * sum(q[0] for q in pp.cols) + len(pp.cols) + 4
    count = 0
    while True:
        pp = _raise1(pp)
        if pp is None:
            return count
        count += 1
        if count > guard:
            raise RuntimeError("raising loop exceeded its bound; pairing rule broken")
