"""
Certificates that a projective braid closure is T_proj(d, d-2).

check_a handles permutation d-braids X with e(X) = N_d whose closure is a
knot: the complement X' = Delta X^{-1} is a product of the d-1 generators in
some order, and lemma47_conjugator conjugates it to sigma_1 ... sigma_{d-1}.
check_b handles (d-2)-braids X = Delta A with e(X) = N_d - 1: then A is a
product of the d-3 generators and is conjugated the same way.
"""
from __future__ import annotations

import dataclasses
import itertools

from lib.braid_core import (
    BraidWord,
    Permutation,
    PermutationBraid,
    complement_in_delta,
    coxeter_word,
    delta,
    exponent_sum,
    format_braid,
    is_permutation_braid,
    lemma47_certificate_holds,
    lemma47_conjugator,
    left_divisible_by_delta,
    perm_of,
    permutation_braid_of,
    positive_witness,
    random_word,
)
from lib.errors import CertificateFailed, HypothesisFailed, NotPositive, RangeViolation
from lib.mw_links import nd
from lib.projective_closure import describe_closure, invariant_signature
from lib.torus_links import t_braid


@dataclasses.dataclass(frozen=True)
class CertificateA:
    braid: BraidWord
    d: int
    hypotheses: dict
    x_prime: BraidWord
    u: BraidWord
    target: BraidWord
    verified: bool
    signature_match: bool

    def to_dict(self):
        return {
            "theorem": "a",
            "braid": format_braid(self.braid),
            "degree": self.d,
            "hypotheses": self.hypotheses,
            "x_prime": format_braid(self.x_prime),
            "u": format_braid(self.u),
            "target": format_braid(self.target),
            "verified": self.verified,
            "signature_match": self.signature_match,
            "conclusion": f"T_proj({self.d},{self.d - 2})",
        }


@dataclasses.dataclass(frozen=True)
class CertificateB:
    braid: BraidWord
    d: int
    hypotheses: dict
    quotient: BraidWord
    u: BraidWord
    target: BraidWord
    verified: bool
    signature_match: bool

    @property
    def x_prime(self):
        return self.quotient

    def to_dict(self):
        return {
            "theorem": "b",
            "braid": format_braid(self.braid),
            "degree": self.d,
            "hypotheses": self.hypotheses,
            "x_prime": format_braid(self.quotient),
            "u": format_braid(self.u),
            "target": format_braid(self.target),
            "verified": self.verified,
            "signature_match": self.signature_match,
            "conclusion": f"T_proj({self.d},{self.d - 2})",
        }


def _require(hypotheses, name, holds, **details):
    hypotheses[name] = bool(holds)
    if not holds:
        raise HypothesisFailed(f"hypothesis '{name}' does not hold", which=name,
                               hypotheses=dict(hypotheses), **details)


def reference_a(d):
    """t_braid(d, d-2): T_proj(d, d-2) on d strands."""
    return t_braid(d, d - 2)


def reference_b(d):
    """t_braid(d-2, d): T_proj(d-2, d) on d-2 strands, isotopic to T_proj(d, d-2)."""
    return t_braid(d - 2, d)


def signatures_agree(w, reference):
    mine, theirs = invariant_signature(w), invariant_signature(reference)
    if w.strands == reference.strands:
        return mine == theirs
    return mine.isotopy_key() == theirs.isotopy_key()


def check_a(x, d):
    if d < 3:
        raise RangeViolation("degree must be at least 3", d=d)
    hypotheses = {}
    _require(hypotheses, "strands", x.strands == d, strands=x.strands, d=d)
    _require(hypotheses, "permutation_braid", is_permutation_braid(x))
    e = exponent_sum(x)
    _require(hypotheses, "exponent_sum", e == nd(d), exponent_sum=e, expected=nd(d))
    closure = describe_closure(x).closure_perm
    _require(hypotheses, "d_cycle", closure.is_full_cycle(), cycles=[list(c) for c in closure.cycles()])

    x_prime = complement_in_delta(PermutationBraid(perm_of(x))).word()
    if sorted(x_prime.letters) != list(range(1, d)):
        raise CertificateFailed("complement is not a product of distinct generators",
                                x_prime=format_braid(x_prime))
    u = lemma47_conjugator(x_prime.letters, d)
    target = coxeter_word(d)
    if not lemma47_certificate_holds(x_prime.letters, u, d):
        raise CertificateFailed("conjugator does not conjugate", u=format_braid(u),
                                x_prime=format_braid(x_prime))
    return CertificateA(x, d, hypotheses, x_prime, u, target, True,
                        signatures_agree(x, reference_a(d)))


def check_b(x, d):
    if d < 3:
        raise RangeViolation("degree must be at least 3", d=d)
    hypotheses = {}
    _require(hypotheses, "strands", x.strands == d - 2, strands=x.strands, d=d)
    try:
        witness = positive_witness(x)
        positive = True
    except NotPositive:
        positive = False
    _require(hypotheses, "positive", positive)
    e = exponent_sum(x)
    _require(hypotheses, "exponent_sum", e == nd(d) - 1, exponent_sum=e, expected=nd(d) - 1)
    divisible, quotient = left_divisible_by_delta(witness)
    _require(hypotheses, "delta_divides", divisible)
    closure = describe_closure(x).closure_perm
    _require(hypotheses, "d_cycle", closure.is_full_cycle(), cycles=[list(c) for c in closure.cycles()])

    if exponent_sum(quotient) != d - 3:
        raise CertificateFailed("quotient has the wrong exponent sum", quotient=format_braid(quotient))
    if sorted(quotient.letters) != list(range(1, d - 2)):
        raise CertificateFailed("quotient is not a product of distinct generators",
                                quotient=format_braid(quotient))
    u = lemma47_conjugator(quotient.letters, d - 2)
    target = coxeter_word(d - 2, d - 3)
    if not lemma47_certificate_holds(quotient.letters, u, d - 2):
        raise CertificateFailed("conjugator does not conjugate", u=format_braid(u),
                                quotient=format_braid(quotient))
    return CertificateB(x, d, hypotheses, quotient, u, target, True,
                        signatures_agree(x, reference_b(d)))


def remark46_word(d):
    """sigma_{d-2}^{-1} Delta_{d-1} sigma_2 as a d-braid."""
    if d < 4:
        raise RangeViolation("the example needs d >= 4", d=d)
    return BraidWord(d, (-(d - 2),) + delta(d - 1).letters + (2,))


def remark46_fixture(d):
    word = remark46_word(d)
    witness = positive_witness(word)
    signature = invariant_signature(word)
    reference = invariant_signature(reference_a(d))
    return {
        "d": d,
        "word": format_braid(word),
        "positive_witness": format_braid(witness),
        "exponent_sum": exponent_sum(word),
        "is_permutation_braid": is_permutation_braid(witness),
        "signature": signature.to_dict(),
        "reference": reference.to_dict(),
        "signatures_match": signature == reference,
        "isotopy_keys_match": signature.isotopy_key() == invariant_signature(reference_b(d)).isotopy_key(),
    }


def sweep_check_a(d):
    """Run check_a over every permutation d-braid."""
    reversal = Permutation.reversal(d)
    summary = {"d": d, "permutations": 0, "candidates": 0, "certified": 0,
               "signature_mismatches": [], "failures": []}
    for images in itertools.permutations(range(1, d + 1)):
        p = Permutation(images)
        summary["permutations"] += 1
        if p.inversions() != nd(d) or not p.then(reversal).is_full_cycle():
            continue
        summary["candidates"] += 1
        x = permutation_braid_of(p)
        try:
            cert = check_a(x, d)
        except (HypothesisFailed, CertificateFailed) as e:
            summary["failures"].append({"braid": format_braid(x), **e.to_dict()})
            continue
        summary["certified"] += 1
        if not cert.signature_match:
            summary["signature_mismatches"].append(format_braid(x))
    return summary


def delta_times_generators(rng, d):
    """Delta_{d-2} followed by sigma_1 .. sigma_{d-3} in random order."""
    letters = list(range(1, d - 2))
    rng.shuffle(letters)
    return BraidWord(d - 2, delta(d - 2).letters + tuple(letters))


def random_check_b(d, n, rng):
    """n instances: half built as Delta A, half random positive words of the right length."""
    summary = {"d": d, "instances": 0, "certified": 0, "rejected": 0,
               "signature_mismatches": [], "certificate_failures": []}
    strands = d - 2
    for index in range(n):
        if index % 2 == 0:
            x = delta_times_generators(rng, d)
        else:
            x = random_word(rng, strands, nd(d) - 1, positive=True)
        summary["instances"] += 1
        try:
            cert = check_b(x, d)
        except HypothesisFailed:
            summary["rejected"] += 1
            continue
        except CertificateFailed as e:
            summary["certificate_failures"].append({"braid": format_braid(x), **e.details})
            continue
        summary["certified"] += 1
        if not cert.signature_match:
            summary["signature_mismatches"].append(format_braid(x))
    return summary
