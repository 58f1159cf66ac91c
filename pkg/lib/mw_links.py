"""
Model links W_g(a_0, ..., a_g).

The braid realization cables Delta_{g+1} blockwise (block i has a_i strands,
every pair of blocks crosses once positively) and then appends
t_braid(a_i, a_i + 2) inside each block, so block i closes up to a copy of
T_proj(a_i + 2, a_i). The closed formulas come from the crossing-count chain
N_d - g - 1 and the linking table 2 lk(K_i, K_j) = a_i a_j.
"""
from __future__ import annotations

import dataclasses
import itertools

from lib.braid_core import BraidWord, Permutation, permutation_braid_of
from lib.errors import InvalidComposition, ModelMismatch
from lib.projective_closure import (
    ClosureSignature,
    canonical_matrix,
    describe_closure,
    diagram_stats,
    invariant_signature,
    rp3_doubled_linking_matrix,
)
from lib.torus_links import t_braid


@dataclasses.dataclass(frozen=True)
class WParams:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidComposition("a composition needs at least one part", parts=[])
        for a in parts:
            if isinstance(a, bool) or not isinstance(a, int) or a < 1:
                raise InvalidComposition("every part must be a positive integer", parts=list(parts))
        object.__setattr__(self, "parts", parts)

    @property
    def d(self):
        return sum(self.parts) + 2

    @property
    def g(self):
        return len(self.parts) - 1


@dataclasses.dataclass(frozen=True)
class WModel:
    params: WParams
    braid: BraidWord
    expected: dict
    actual: ClosureSignature
    crossings: int

    def to_dict(self):
        return {
            "parts": list(self.params.parts),
            "d": self.params.d,
            "g": self.params.g,
            "components": self.expected["components"],
            "dlk_matrix": self.expected["dlk_matrix"],
            "total_cr": self.expected["total_cr"],
            "per_component_cr": self.expected["per_component_cr"],
            "w_lambda_abs": self.expected["w_lambda_abs"],
            "braid": str(self.braid),
            "signature": self.actual.to_dict(),
            "verified": True,
        }


def parse_parts(text):
    try:
        return WParams(tuple(int(token) for token in text.replace(" ", "").split(",") if token))
    except ValueError:
        raise InvalidComposition("parts must be a comma separated list of integers", parts=text)


def nd(d):
    return (d - 1) * (d - 2) // 2


def expected_invariants(wp):
    parts = wp.parts
    d, g = wp.d, wp.g
    size = len(parts)
    dlk = [[parts[i] * parts[j] if i != j else 0 for j in range(size)] for i in range(size)]
    per_component = [(a + 2) * (a - 1) // 2 for a in parts]
    total = sum(parts)
    # 1/2 (sum a)^2 + 1/2 sum a - (g + 1), kept doubled to stay in integers
    chain = sum(per_component) + sum(parts[i] * parts[j] for i, j in itertools.combinations(range(size), 2))
    doubled_closed_form = total * total + total - 2 * (g + 1)
    return {
        "components": g + 1,
        "component_params": [(a + 2, a) for a in parts],
        "dlk_matrix": dlk,
        "dlk_offdiag": sorted(parts[i] * parts[j] for i, j in itertools.combinations(range(size), 2)),
        "per_component_cr": per_component,
        "total_cr": nd(d) - g - 1,
        "w_lambda_abs": nd(d) - g,
        "identity_check": 2 * chain == doubled_closed_form == 2 * (nd(d) - g - 1),
    }


def _block_swap(offset, left, right, strands):
    """Positive permutation braid moving a block of `left` strands past `right` strands."""
    size = left + right
    images = [i + right for i in range(1, left + 1)] + [i - left for i in range(left + 1, size + 1)]
    return permutation_braid_of(Permutation(tuple(images))).embedded(offset, strands)


def block_offsets(wp):
    """Strand offset of each block once the cabled half twist has reversed their order."""
    offsets = {}
    position = 0
    for index in reversed(range(len(wp.parts))):
        offsets[index] = position
        position += wp.parts[index]
    return offsets


def w_braid(wp):
    parts = wp.parts
    strands = wp.d - 2
    order = list(range(len(parts)))
    word = BraidWord(strands, ())
    # Delta_{g+1} = prod_{i} prod_{j <= g+1-i} sigma_j, each sigma_j cabled as a block swap
    for i in range(1, len(parts)):
        for j in range(1, len(parts) - i + 1):
            offset = sum(parts[b] for b in order[:j - 1])
            left, right = parts[order[j - 1]], parts[order[j]]
            word = word + _block_swap(offset, left, right, strands)
            order[j - 1], order[j] = order[j], order[j - 1]
    offsets = block_offsets(wp)
    for index, a in enumerate(parts):
        word = word + t_braid(a, a + 2).embedded(offsets[index], strands)
    return word


def _local_words(wp, braid):
    cable_length = sum(wp.parts[i] * wp.parts[j]
                       for i, j in itertools.combinations(range(len(wp.parts)), 2))
    tail = braid.letters[cable_length:]
    offsets = block_offsets(wp)
    words = []
    position = 0
    for index, a in enumerate(wp.parts):
        length = (a + 2) * (a - 1) // 2
        chunk = tail[position:position + length]
        position += length
        words.append(tuple(k - offsets[index] for k in chunk))
    return words


def verify_w_model(wp):
    expected = expected_invariants(wp)
    braid = w_braid(wp)
    closure = describe_closure(braid)
    stats = diagram_stats(braid)
    signature = invariant_signature(braid)

    def mismatch(field, want, got):
        raise ModelMismatch(f"W model {list(wp.parts)} disagrees on {field}",
                            field=field, expected=want, actual=got)

    if not expected["identity_check"]:
        mismatch("identity_check", True, False)
    if len(closure.components) != expected["components"]:
        mismatch("components", expected["components"], len(closure.components))
    if sorted(closure.component_lengths) != sorted(wp.parts):
        mismatch("component_lengths", sorted(wp.parts), sorted(closure.component_lengths))
    measured = canonical_matrix(rp3_doubled_linking_matrix(braid).entries)
    if measured != canonical_matrix(expected["dlk_matrix"]):
        mismatch("dlk_matrix", expected["dlk_matrix"], [list(r) for r in measured])
    if stats.crossings != expected["total_cr"]:
        mismatch("total_cr", expected["total_cr"], stats.crossings)
    if not stats.all_positive:
        mismatch("all_positive", True, False)
    for index, (a, local) in enumerate(zip(wp.parts, _local_words(wp, braid))):
        if local != t_braid(a, a + 2).letters:
            mismatch(f"block_{index}", list(t_braid(a, a + 2).letters), list(local))
    return WModel(wp, braid, expected, signature, stats.crossings)


def corollary16_check(wp):
    if wp.g < 1:
        raise InvalidComposition("positivity of linking needs at least two components",
                                 parts=list(wp.parts))
    model = verify_w_model(wp)
    measured = rp3_doubled_linking_matrix(model.braid)
    return all(entry > 0 for entry in measured.off_diagonal())


def compositions(total):
    """All compositions of `total` into positive parts, in lexicographic order."""
    if total < 1:
        return []
    result = []
    for cuts in itertools.product((False, True), repeat=total - 1):
        parts = []
        run = 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        result.append(tuple(parts))
    return sorted(result)


def sweep(max_total):
    """Verify every composition with total <= max_total; returns a summary dict."""
    checked = 0
    failures = []
    for total in range(1, max_total + 1):
        for parts in compositions(total):
            wp = WParams(parts)
            try:
                verify_w_model(wp)
                if wp.g >= 1 and not corollary16_check(wp):
                    failures.append({"parts": list(parts), "field": "corollary16"})
            except ModelMismatch as e:
                failures.append({"parts": list(parts), **e.details})
            checked += 1
    return {"checked": checked, "failures": failures}
