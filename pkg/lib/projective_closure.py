"""
Projective braid closures in RP^3 and their lifts to S^3.

Strands are oriented downward and sigma_i is a positive crossing. The
projective closure of X joins bottom position j to top position n+1-j, so
its components are the cycles of perm_of(X Delta). The lift to S^3 is the
ordinary closure of X tau(X). Linking numbers are stored doubled so that
the half-integers of RP^3 stay integral.
"""
from __future__ import annotations

import dataclasses
import itertools

import config
from lib.braid_core import BraidWord, Permutation, delta, perm_of, tau


@dataclasses.dataclass(frozen=True)
class ClosureDescriptor:
    braid: BraidWord
    closure_perm: Permutation
    components: tuple
    component_lengths: tuple

    def component_of(self):
        """Map each strand (top position) to its component index."""
        owner = {}
        for index, cycle in enumerate(self.components):
            for strand in cycle:
                owner[strand] = index
        return owner


@dataclasses.dataclass(frozen=True)
class DoubledLinkingMatrix:
    entries: tuple

    @property
    def size(self):
        return len(self.entries)

    def off_diagonal(self):
        return [self.entries[i][j] for i in range(self.size) for j in range(i + 1, self.size)]

    def rows(self):
        return [list(row) for row in self.entries]


@dataclasses.dataclass(frozen=True)
class DiagramStats:
    arcs: int
    crossings: int
    all_positive: bool
    per_component_self_crossings: tuple


@dataclasses.dataclass(frozen=True)
class ClosureSignature:
    components: int
    component_lengths: tuple
    dlk_rp3: tuple
    lift_components: int
    dlk_s3_lift: tuple

    def isotopy_key(self):
        """The part of the signature that does not depend on the strand count."""
        return (self.components, self.dlk_rp3, self.lift_components, self.dlk_s3_lift)

    def to_dict(self):
        return {
            "components": self.components,
            "component_lengths": list(self.component_lengths),
            "dlk_rp3": [list(row) for row in self.dlk_rp3],
            "lift_components": self.lift_components,
            "dlk_s3_lift": [list(row) for row in self.dlk_s3_lift],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            components=int(data["components"]),
            component_lengths=tuple(data["component_lengths"]),
            dlk_rp3=tuple(tuple(row) for row in data["dlk_rp3"]),
            lift_components=int(data["lift_components"]),
            dlk_s3_lift=tuple(tuple(row) for row in data["dlk_s3_lift"]),
        )


def _closure(w, perm):
    cycles = tuple(perm.cycles())
    return ClosureDescriptor(w, perm, cycles, tuple(len(c) for c in cycles))


def describe_closure(w):
    return _closure(w, perm_of(w + delta(w.strands)))


def describe_s3_closure(w):
    return _closure(w, perm_of(w))


def lift(w):
    return w + tau(w)


def twisted_conjugate(w, u):
    """u w tau(u)^{-1}: conjugates w Delta by u, so the projective closure is unchanged."""
    return u + w + tau(u).inverse()


def lift_component_map(w):
    """Map each lift component index to the projective component it covers."""
    projective = describe_closure(w).component_of()
    lifted = describe_s3_closure(lift(w))
    return {index: projective[cycle[0]] for index, cycle in enumerate(lifted.components)}


def _crossing_strands(w):
    """Yield (letter, strand_a, strand_b) for each crossing, strands named by top position."""
    at = list(range(1, w.strands + 1))
    for k in w.letters:
        i = abs(k) - 1
        yield k, at[i], at[i + 1]
        at[i], at[i + 1] = at[i + 1], at[i]


def _linking_matrix(w, closure):
    owner = closure.component_of()
    size = len(closure.components)
    entries = [[0] * size for _ in range(size)]
    for k, a, b in _crossing_strands(w):
        ca, cb = owner[a], owner[b]
        if ca == cb:
            continue
        sign = 1 if k > 0 else -1
        entries[ca][cb] += sign
        entries[cb][ca] += sign
    return entries


def s3_doubled_linking_matrix(w):
    entries = _linking_matrix(w, describe_s3_closure(w))
    return DoubledLinkingMatrix(tuple(tuple(row) for row in entries))


def rp3_doubled_linking_matrix(w):
    projective = describe_closure(w)
    lifted_word = lift(w)
    lifted = describe_s3_closure(lifted_word)
    s3 = _linking_matrix(lifted_word, lifted)
    cover = lift_component_map(w)
    size = len(projective.components)
    entries = [[0] * size for _ in range(size)]
    for a, b in itertools.permutations(range(len(lifted.components)), 2):
        i, j = cover[a], cover[b]
        if i != j:
            entries[i][j] += s3[a][b]
    # s3 entries are doubled S^3 linking numbers; the sum over lifted pairs wants lk itself
    for i in range(size):
        for j in range(size):
            if i != j:
                entries[i][j] //= 2
    return DoubledLinkingMatrix(tuple(tuple(row) for row in entries))


def diagram_stats(w):
    projective = describe_closure(w)
    owner = projective.component_of()
    self_crossings = [0] * len(projective.components)
    for k, a, b in _crossing_strands(w):
        if owner[a] == owner[b]:
            self_crossings[owner[a]] += 1 if k > 0 else -1
    return DiagramStats(
        arcs=w.strands,
        crossings=len(w.letters),
        all_positive=w.is_positive(),
        per_component_self_crossings=tuple(self_crossings),
    )


def _refine_colors(entries):
    size = len(entries)
    colors = [tuple(sorted(entries[i][j] for j in range(size) if j != i)) for i in range(size)]
    while True:
        signature = [
            (colors[i], tuple(sorted((entries[i][j], colors[j]) for j in range(size) if j != i)))
            for i in range(size)
        ]
        ranks = {key: rank for rank, key in enumerate(sorted(set(signature)))}
        refined = [ranks[key] for key in signature]
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _interchangeable(entries, cell):
    for i, j in itertools.combinations(cell, 2):
        for k in range(len(entries)):
            if k in (i, j):
                continue
            if entries[i][k] != entries[j][k]:
                return False
    return True


def canonical_matrix(entries, max_tries=None):
    """Canonical relabeling of a symmetric matrix under simultaneous row/column permutation.

    Color refinement orders the indices; cells whose members are pairwise
    interchangeable are fixed, the rest are brute-forced for the
    lexicographically smallest matrix.
    """
    max_tries = config.MAX_CANONICAL_BRUTE_FORCE if max_tries is None else max_tries
    entries = [list(row) for row in entries]
    size = len(entries)
    if size == 0:
        return ()
    colors = _refine_colors(entries)
    cells = []
    for color in sorted(set(colors)):
        cells.append([i for i in range(size) if colors[i] == color])
    choices = []
    for cell in cells:
        if len(cell) == 1 or _interchangeable(entries, cell):
            choices.append([tuple(cell)])
        else:
            choices.append(list(itertools.permutations(cell)))
    best = None
    for tries, combo in enumerate(itertools.product(*choices)):
        if tries >= max_tries:
            break
        order = [i for part in combo for i in part]
        candidate = tuple(tuple(entries[i][j] for j in order) for i in order)
        if best is None or candidate < best:
            best = candidate
    return best


def invariant_signature(w):
    projective = describe_closure(w)
    lifted_word = lift(w)
    lifted = describe_s3_closure(lifted_word)
    return ClosureSignature(
        components=len(projective.components),
        component_lengths=tuple(sorted(projective.component_lengths)),
        dlk_rp3=canonical_matrix(rp3_doubled_linking_matrix(w).entries),
        lift_components=len(lifted.components),
        dlk_s3_lift=canonical_matrix(s3_doubled_linking_matrix(lifted_word).entries),
    )
