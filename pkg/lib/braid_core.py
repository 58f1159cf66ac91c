"""
Braid words, permutations and the positive braid monoid.

Composition convention (used by every cycle computation in the package):
words are read left to right, a permutation sends the top position of a
strand to its bottom position, and perm_of(x + y) applies perm_of(x) first,
then perm_of(y). Permutation.then() is the only place this is spelled out.

Positive braids are compared through their left-greedy canonical form: a
sequence of permutation braids in which every adjacent pair is left-weighted
(the starting set of a factor lies in the finishing set of its predecessor).
"""
from __future__ import annotations

import dataclasses
import re
from functools import lru_cache

from lib.errors import MalformedBraid, NotAPermutationOfGenerators, NotPositive

BRAID_TEXT = re.compile(r"^\s*B(\d+):(.*)$")


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in sigma_1..sigma_{n-1}; letter -k stands for sigma_k^{-1}."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if isinstance(self.strands, bool) or not isinstance(self.strands, int) or self.strands < 1:
            raise MalformedBraid("strand count must be a positive integer", strands=self.strands)
        letters = tuple(int(k) for k in self.letters)
        for k in letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise MalformedBraid(
                    f"letter {k} out of range for {self.strands} strands",
                    strands=self.strands, letter=k)
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        if not isinstance(other, BraidWord):
            return NotImplemented
        if other.strands != self.strands:
            raise MalformedBraid("cannot concatenate braids on different strand counts",
                                 left=self.strands, right=other.strands)
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self):
        return format_braid(self)

    def is_positive(self):
        return all(k > 0 for k in self.letters)

    def inverse(self):
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def mirror(self):
        return BraidWord(self.strands, tuple(-k for k in self.letters))

    def power(self, k):
        return BraidWord(self.strands, self.letters * k)

    def embedded(self, offset, strands):
        """The same word acting on strands offset+1..offset+n of a wider braid."""
        return BraidWord(strands, tuple(k + offset if k > 0 else k - offset for k in self.letters))


@dataclasses.dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise MalformedBraid("images must be a bijection of 1..n", images=list(images))
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n, i):
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def reversal(cls, n):
        return cls(tuple(range(n, 0, -1)))

    @property
    def size(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def then(self, other):
        """Apply self first, then other."""
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self):
        inv = [0] * self.size
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def power(self, k):
        result = Permutation.identity(self.size)
        for _ in range(k):
            result = result.then(self)
        return result

    def is_identity(self):
        return self.images == tuple(range(1, self.size + 1))

    def cycles(self):
        """Cycles as tuples, each starting at its smallest element, sorted."""
        seen = set()
        cycles = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = []
            i = start
            while i not in seen:
                seen.add(i)
                cycle.append(i)
                i = self(i)
            cycles.append(tuple(cycle))
        return cycles

    def is_full_cycle(self):
        return len(self.cycles()) == 1

    def inversions(self):
        images = self.images
        return sum(1 for a in range(len(images)) for b in range(a + 1, len(images))
                   if images[a] > images[b])


@dataclasses.dataclass(frozen=True)
class PermutationBraid:
    perm: Permutation

    @property
    def strands(self):
        return self.perm.size

    @property
    def exponent_sum(self):
        return self.perm.inversions()

    def word(self):
        return permutation_braid_of(self.perm)


@dataclasses.dataclass(frozen=True)
class CanonicalForm:
    strands: int
    factors: tuple = ()

    def word(self):
        letters = []
        for factor in self.factors:
            letters.extend(permutation_braid_of(factor).letters)
        return BraidWord(self.strands, tuple(letters))

    def delta_power(self):
        reversal = Permutation.reversal(self.strands)
        count = 0
        for factor in self.factors:
            if factor != reversal:
                break
            count += 1
        return count

    def __str__(self):
        text = f"{self.strands};"
        if self.factors:
            text += " " + "|".join(
                "[" + ",".join(str(i) for i in f.images) + "]" for f in self.factors)
        return text


def parse_braid(text):
    """Parse `B<n>: k1 k2 ...`; the empty word is `B<n>:`."""
    match = BRAID_TEXT.match(text.strip())
    if not match:
        raise MalformedBraid("expected 'B<n>: k1 k2 ...'", text=text)
    try:
        letters = tuple(int(token) for token in match.group(2).split())
    except ValueError:
        raise MalformedBraid("letters must be signed integers", text=text)
    return BraidWord(int(match.group(1)), letters)


def format_braid(w):
    text = f"B{w.strands}:"
    if w.letters:
        text += " " + " ".join(str(k) for k in w.letters)
    return text


def parse_canonical_form(text):
    head, _, body = text.partition(";")
    try:
        strands = int(head)
    except ValueError:
        raise MalformedBraid("expected 'n; [images]|[images]...'", text=text)
    factors = []
    for chunk in body.strip().split("|") if body.strip() else []:
        chunk = chunk.strip()
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise MalformedBraid("factor must be bracketed", factor=chunk)
        factors.append(Permutation(tuple(int(i) for i in chunk[1:-1].split(","))))
    return CanonicalForm(strands, tuple(factors))


def delta(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MalformedBraid("delta needs at least one strand", strands=n)
    letters = []
    for i in range(1, n):
        letters.extend(range(1, n - i + 1))
    return BraidWord(n, tuple(letters))


def coxeter_word(n, m=None):
    """sigma_1 sigma_2 ... sigma_m on n strands (m defaults to n - 1)."""
    m = n - 1 if m is None else m
    return BraidWord(n, tuple(range(1, m + 1)))


def tau(w):
    n = w.strands
    return BraidWord(n, tuple(n - k if k > 0 else -(n + k) for k in w.letters))


def exponent_sum(w):
    return sum(1 if k > 0 else -1 for k in w.letters)


def perm_of(w):
    # position -> strand currently there; strands are named by top position
    at = list(range(1, w.strands + 1))
    for k in w.letters:
        i = abs(k) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    images = [0] * w.strands
    for position, strand in enumerate(at, start=1):
        images[strand - 1] = position
    return Permutation(tuple(images))


def permutation_braid_of(p):
    """Positive word with one crossing per inversion, built by descending slides.

    Row j of the insertion sort slides the strand that must end at bottom
    position j leftwards from its current position, emitting the letters
    c-1, c-2, ..., j.
    """
    n = p.size
    target = p.inverse().images
    current = list(range(1, n + 1))
    letters = []
    for j in range(n):
        c = current.index(target[j])
        for position in range(c, j, -1):
            letters.append(position)
            current[position - 1], current[position] = current[position], current[position - 1]
    return BraidWord(n, tuple(letters))


@lru_cache(maxsize=None)
def starting_set(p):
    return frozenset(i for i in range(1, p.size) if p(i) > p(i + 1))


@lru_cache(maxsize=None)
def finishing_set(p):
    inv = p.inverse()
    return frozenset(i for i in range(1, p.size) if inv(i) > inv(i + 1))


@lru_cache(maxsize=None)
def _left_weight(a, b):
    """Move generators from the front of b to the end of a until S(b) is in F(a)."""
    while True:
        movable = starting_set(b) - finishing_set(a)
        if not movable:
            return a, b
        s = Permutation.transposition(a.size, min(movable))
        a = a.then(s)
        b = s.then(b)


def _normalize(factors):
    factors = list(factors)
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 2, -1, -1):
            a, b = _left_weight(factors[j], factors[j + 1])
            if (a, b) != (factors[j], factors[j + 1]):
                factors[j], factors[j + 1] = a, b
                changed = True
    return [f for f in factors if not f.is_identity()]


def _positive_factors(n, letters):
    factors = []
    for k in letters:
        factors.append(Permutation.transposition(n, k))
        factors = _normalize(factors)
    return factors


def garside_normal_form(w):
    """Return (infimum, factors): w = Delta^infimum * factors, factors left-weighted, no Delta.

    Every inverse letter is rewritten as Delta^{-1} (Delta sigma_k^{-1}) and the
    Delta^{-1} is pulled to the front through tau, so the word becomes
    Delta^{-r} P with P positive.
    """
    n = w.strands
    reversal = Permutation.reversal(n)
    positive = []
    r = 0
    for k in w.letters:
        if k > 0:
            positive.append(k)
            continue
        positive = [n - x for x in positive]
        complement = reversal.then(Permutation.transposition(n, -k))
        positive.extend(permutation_braid_of(complement).letters)
        r += 1
    factors = _positive_factors(n, positive)
    s = 0
    while s < len(factors) and factors[s] == reversal:
        s += 1
    return s - r, tuple(factors[s:])


def canonical_form(w):
    infimum, rest = garside_normal_form(w)
    if infimum < 0:
        raise NotPositive("braid is not in the positive monoid",
                          braid=format_braid(w), infimum=infimum)
    reversal = Permutation.reversal(w.strands)
    factors = (reversal,) * infimum if w.strands > 1 else ()
    return CanonicalForm(w.strands, factors + rest)


def positive_witness(w):
    if w.is_positive():
        return w
    return canonical_form(w).word()


def positive_equal(u, v):
    return u.strands == v.strands and canonical_form(u) == canonical_form(v)


def is_permutation_braid(w):
    if not w.is_positive():
        return False
    return len(canonical_form(w).factors) <= 1


def complement_in_delta(x):
    """X' = Delta X^{-1}, so that X' X = Delta."""
    reversal = Permutation.reversal(x.strands)
    return PermutationBraid(reversal.then(x.perm.inverse()))


def right_complement_in_delta(x):
    """X^{-1} Delta, so that X (X^{-1} Delta) = Delta."""
    reversal = Permutation.reversal(x.strands)
    return PermutationBraid(x.perm.inverse().then(reversal))


def left_divisible_by_delta(w):
    """(True, A) with Delta A = w when Delta left-divides w, else (False, None)."""
    cf = canonical_form(w)
    if w.strands == 1:
        return True, w
    if cf.factors and cf.factors[0] == Permutation.reversal(w.strands):
        return True, CanonicalForm(w.strands, cf.factors[1:]).word()
    return False, None


def lemma47_conjugator(ys, n):
    """Positive u with u (sigma_{y1} ... sigma_{ym}) = (sigma_1 ... sigma_m) u.

    At level k the tokens are 1..k: token j < k is sigma_j and token k is the
    product sigma_k ... sigma_m. Each step merges tokens k-1 and k; when token
    k comes first, the word is conjugated by (k-1) C, C the tail after k-1.
    """
    ys = tuple(int(y) for y in ys)
    m = len(ys)
    if sorted(ys) != list(range(1, m + 1)):
        raise NotAPermutationOfGenerators("generator indices must be a permutation of 1..m",
                                          ys=list(ys))
    if m > n - 1:
        raise NotAPermutationOfGenerators(f"{m} generators do not fit on {n} strands",
                                          ys=list(ys), strands=n)
    seq = list(ys)
    u = []
    for k in range(m, 1, -1):
        i_prev = seq.index(k - 1)
        i_last = seq.index(k)
        if i_prev < i_last:
            seq = seq[:i_prev] + [k - 1] + seq[i_prev + 1:i_last] + seq[i_last + 1:]
        else:
            a = seq[:i_last]
            b = seq[i_last + 1:i_prev]
            c = seq[i_prev + 1:]
            u = [k - 1] + c + u
            seq = [k - 1] + c + a + b
    return BraidWord(n, tuple(u))


def lemma47_certificate_holds(ys, u, n):
    y = BraidWord(n, tuple(ys))
    x = coxeter_word(n, len(ys))
    return positive_equal(u + y, x + u)


def random_word(rng, n, length, positive=False):
    if n < 2:
        return BraidWord(n, ())
    letters = []
    for _ in range(length):
        k = rng.randint(1, n - 1)
        if not positive and rng.random() < 0.5:
            k = -k
        letters.append(k)
    return BraidWord(n, tuple(letters))
