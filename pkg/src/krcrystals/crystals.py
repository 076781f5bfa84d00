"""Type-agnostic crystal machinery.

The signature rule, operator dispatch on tensor products, operator words,
raising to highest elements, and breadth-first component generation.  A
factor crystal is any object exposing

    apply(direction, i, elt) -> elt or None
    eps_phi(i, elt) -> (eps, phi)
    weight(elt) -> tuple of ints
    serialize(elt) -> JSON-compatible value
    element_key(elt) -> canonical string
    indices -> iterable of operator indices

Elements themselves are immutable values (tuples all the way down).
"""

from __future__ import annotations

import json

E = "e"
F = "f"
PLUS = "+"
MINUS = "-"


class CapExceeded(RuntimeError):
    """Raised when component generation outgrows the configured cap."""


def reduce_signature(symbols):
    """Cancel adjacent +- pairs; return (minus_count, plus_count) of the
    surviving -...-+...+ form."""
    minus = plus = 0
    for s in symbols:
        if s == PLUS:
            plus += 1
        elif s == MINUS:
            if plus:
                plus -= 1
            else:
                minus += 1
        else:
            raise ValueError(f"bad signature symbol {s!r}")
    return minus, plus


def select_position(pairs, direction):
    """Signature-rule dispatch over positions with local (eps, phi) pairs.

    Builds the concatenated signature -^eps +^phi per position, reduces it,
    and returns the position owning the rightmost surviving MINUS (for E)
    or the leftmost surviving PLUS (for F).  None when no symbol survives.
    """
    minus_owners = []
    plus_owners = []
    for pos, (eps, phi) in enumerate(pairs):
        for _ in range(eps):
            if plus_owners:
                plus_owners.pop()
            else:
                minus_owners.append(pos)
        plus_owners.extend([pos] * phi)
    if direction == E:
        return minus_owners[-1] if minus_owners else None
    if direction == F:
        return plus_owners[0] if plus_owners else None
    raise ValueError(f"bad direction {direction!r}")


class TensorCrystal:
    """Tensor product of factor crystals; elements are tuples of factor
    elements, leftmost factor first."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        if not self.factors:
            raise ValueError("tensor product needs at least one factor")
        self.indices = tuple(self.factors[0].indices)

    def eps_phi(self, i, t):
        minus = plus = 0
        for fac, b in zip(self.factors, t):
            e, p = fac.eps_phi(i, b)
            if plus >= e:
                plus = plus - e + p
            else:
                minus += e - plus
                plus = p
        return minus, plus

    def acting_factor(self, direction, i, t):
        """Which factor the operator would act on, or None."""
        pairs = [fac.eps_phi(i, b) for fac, b in zip(self.factors, t)]
        return select_position(pairs, direction)

    def apply(self, direction, i, t):
        j = self.acting_factor(direction, i, t)
        if j is None:
            return None
        b = self.factors[j].apply(direction, i, t[j])
        if b is None:
            raise RuntimeError(
                f"factor {j} refused {direction}_{i} although its signature says otherwise"
            )
        return t[:j] + (b,) + t[j + 1 :]

    def weight(self, t):
        acc = None
        for fac, b in zip(self.factors, t):
            w = fac.weight(b)
            acc = w if acc is None else tuple(a + c for a, c in zip(acc, w))
        return acc

    def serialize(self, t):
        return [fac.serialize(b) for fac, b in zip(self.factors, t)]

    def element_key(self, t):
        return json.dumps(self.serialize(t), separators=(",", ":"))


def apply_word(crystal, direction, word, t):
    """Apply a word of (index, exponent) entries, leftmost entry first.
    None propagates."""
    for i, m in word:
        for _ in range(m):
            if t is None:
                return None
            t = crystal.apply(direction, i, t)
    return t


def reversed_word(word):
    """The word replayed back to front (exponents kept with their index)."""
    return [(i, m) for i, m in reversed(list(word))]


def raise_to_highest(crystal, t, indices):
    """Apply raising operators, smallest applicable index first, until none
    applies.  Returns (highest element, word that was applied)."""
    indices = sorted(indices)
    word = []
    while True:
        for i in indices:
            u = crystal.apply(E, i, t)
            if u is not None:
                t = u
                if word and word[-1][0] == i:
                    word[-1] = (i, word[-1][1] + 1)
                else:
                    word.append((i, 1))
                break
        else:
            return t, word


class ComponentGraph:
    """A generated crystal component: canonically sorted elements plus
    labeled arrows (src, i, dst) meaning dst is the i-lowering of src."""

    def __init__(self, crystal, elements, arrows):
        self.crystal = crystal
        self.elements = elements
        self.arrows = arrows
        self._index = {crystal.element_key(b): j for j, b in enumerate(elements)}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, b):
        return self.crystal.element_key(b) in self._index

    def index(self, b):
        return self._index[self.crystal.element_key(b)]

    def arrow_triples(self):
        """Arrows as (src_index, i, dst_index), sorted."""
        out = [(self.index(a), i, self.index(b)) for a, i, b in self.arrows]
        out.sort()
        return out

    def to_json_obj(self):
        return {
            "nodes": [self.crystal.serialize(b) for b in self.elements],
            "edges": [{"src": s, "i": i, "dst": d} for s, i, d in self.arrow_triples()],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"), sort_keys=False)

    def to_dot(self):
        lines = ["digraph crystal {", "  rankdir=LR;"]
        for j, b in enumerate(self.elements):
            label = self.crystal.element_key(b).replace('"', "'")
            lines.append(f'  n{j} [label="{label}"];')
        for s, i, d in self.arrow_triples():
            lines.append(f'  n{s} -> n{d} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate_component(crystal, seed, indices, cap=200000):
    """Breadth-first closure of the seed under e_i and f_i for i in indices.

    The result is order-independent: elements and arrows are sorted by the
    canonical element key.  Raises CapExceeded past the element cap.
    """
    indices = sorted(indices)
    seen = {crystal.element_key(seed): seed}
    frontier = [seed]
    arrows = {}
    while frontier:
        next_frontier = []
        for t in frontier:
            tkey = crystal.element_key(t)
            for i in indices:
                u = crystal.apply(F, i, t)
                if u is not None:
                    ukey = crystal.element_key(u)
                    arrows[(tkey, i, ukey)] = (t, i, u)
                    if ukey not in seen:
                        seen[ukey] = u
                        next_frontier.append(u)
                u = crystal.apply(E, i, t)
                if u is not None:
                    ukey = crystal.element_key(u)
                    arrows[(ukey, i, tkey)] = (u, i, t)
                    if ukey not in seen:
                        seen[ukey] = u
                        next_frontier.append(u)
            if len(seen) > cap:
                raise CapExceeded(f"component exceeded cap of {cap} elements")
        frontier = next_frontier
    elements = [seen[k] for k in sorted(seen)]
    arrow_list = [arrows[k] for k in sorted(arrows)]
    return ComponentGraph(crystal, elements, arrow_list)
