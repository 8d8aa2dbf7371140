"""The degree-n multilinear slice of the free associative ring over the integers.

Elements are sparse integer combinations of the n! words x_{s(1)} ... x_{s(n)},
one word per permutation s.  The central map sends each word to the full
associative expansion of the left-normed bracket [x_{s(1)}, ..., x_{s(n)}];
a permutation set satisfies the corresponding bracket identity exactly when
its plus-signed word sum is in the kernel of that map.

Two independent expansion routes are provided and must agree: the recursive
commutator route and a closed shuffle-sum route, each usable as an oracle
for the other.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .perm import Perm, PermSet, as_perm, enumerate_shuffles_first

Word = tuple[int, ...]


class MultilinearPoly:
    """Sparse integer combination of the degree-n multilinear words.

    Immutable by convention: all operations return new objects.  Zero
    coefficients are never stored; the zero element keeps its degree.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: dict[Word, int] | None = None):
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        clean: dict[Word, int] = {}
        for word, coeff in (terms or {}).items():
            if len(word) != degree:
                raise ValueError(f"word {word} does not have degree {degree}")
            if coeff:
                clean[word] = coeff
        self.degree = degree
        self._terms = clean

    def coefficient(self, word: Word) -> int:
        return self._terms.get(tuple(word), 0)

    def terms(self) -> Iterator[tuple[Word, int]]:
        """Terms in canonical order (lexicographic on the word)."""
        for word in sorted(self._terms):
            yield word, self._terms[word]

    def term_count(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        out = dict(self._terms)
        for word, coeff in other._terms.items():
            new = out.get(word, 0) + coeff
            if new:
                out[word] = new
            else:
                out.pop(word, None)
        return MultilinearPoly(self.degree, out)

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.degree, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def scale(self, c: int) -> "MultilinearPoly":
        if c == 0:
            return MultilinearPoly(self.degree)
        return MultilinearPoly(self.degree, {w: c * v for w, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"MultilinearPoly({self.degree}, {poly_to_text(self)!r})"


def zero(degree: int) -> MultilinearPoly:
    return MultilinearPoly(degree)


def monomial(sigma: Perm) -> MultilinearPoly:
    """The single word indexed by a permutation, coefficient 1."""
    return MultilinearPoly(len(sigma), {as_perm(sigma): 1})


def sum_of_set(ps: PermSet) -> MultilinearPoly:
    """The plus-signed sum of the words indexed by a permutation set."""
    return MultilinearPoly(ps.degree, {p: 1 for p in ps.members})


@lru_cache(maxsize=65536)
def _expand_letters(word: Word) -> MultilinearPoly:
    """Left-normed bracket expansion of any word of distinct letters."""
    terms: dict[Word, int] = {word[:1]: 1}
    for letter in word[1:]:
        nxt: dict[Word, int] = {}
        for w, c in terms.items():
            nxt[w + (letter,)] = c
            nxt[(letter,) + w] = -c
        terms = nxt
    return MultilinearPoly(len(word), terms)


def expand_bracket_recursive(sigma: Perm) -> MultilinearPoly:
    """Expand the left-normed bracket of the letters in sigma's order.

    Uses the recursion bracket(P, x) = P x - x P letter by letter, so the
    result has exactly 2^(n-1) words with coefficients +-1 and the word
    sigma itself carries +1.
    """
    return _expand_letters(as_perm(sigma))


def expand_bracket_shuffle(sigma: Perm) -> MultilinearPoly:
    """Expand the left-normed bracket by the closed shuffle formula.

    Sums (-1)^i over all splittings into a reversed i-block and a front-pinned
    (n-i)-block: the word reads the beta positions backwards, then the alpha
    positions forwards, all relabeled through sigma.  Independent of the
    recursive route; the two must agree exactly.
    """
    word = as_perm(sigma)
    n = len(word)
    terms: dict[Word, int] = {}
    for i in range(n):
        sign = -1 if i % 2 else 1
        for sh in enumerate_shuffles_first(n - i, i):
            out = tuple(word[b] for b in reversed(sh.beta)) + tuple(word[a] for a in sh.alpha)
            terms[out] = terms.get(out, 0) + sign
    return MultilinearPoly(n, terms)


def bracket_image(p: MultilinearPoly) -> MultilinearPoly:
    """The linear map sending each word to its left-normed bracket expansion."""
    acc: dict[Word, int] = {}
    for word, coeff in p._terms.items():
        for w, c in expand_bracket_recursive(word)._terms.items():
            new = acc.get(w, 0) + coeff * c
            if new:
                acc[w] = new
            else:
                acc.pop(w, None)
    return MultilinearPoly(p.degree, acc)


def _concat_product(a: MultilinearPoly, b: MultilinearPoly) -> dict[Word, int]:
    out: dict[Word, int] = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            out[wa + wb] = out.get(wa + wb, 0) + ca * cb
    return out


def bracket_of_two_blocks(k: int, l: int) -> MultilinearPoly:
    """Fully expand the bracket of the first k letters against the next l.

    Both inner left-normed brackets are expanded recursively, then the outer
    commutator is formed by concatenation products.  Serves as the
    independent reference for the expansion-set constructions.
    """
    if k < 1 or l < 1:
        raise ValueError("both block sizes must be at least 1")
    left = _expand_letters(tuple(range(k)))
    right = _expand_letters(tuple(range(k, k + l)))
    terms = _concat_product(left, right)
    for w, c in _concat_product(right, left).items():
        new = terms.get(w, 0) - c
        if new:
            terms[w] = new
        else:
            terms.pop(w, None)
    return MultilinearPoly(k + l, terms)


def kernel_probe(j: int, n: int) -> MultilinearPoly:
    """The identity word plus letter j times the bracket of the letters
    before it, padded with the letters after it.

    A classical element of the kernel of the bracket map, with 1 + 2^(j-2)
    terms; requires 2 <= j <= n.
    """
    if not 2 <= j <= n:
        raise ValueError(f"need 2 <= j <= n, got j={j}, n={n}")
    terms: dict[Word, int] = {tuple(range(n)): 1}
    inner = expand_bracket_recursive(tuple(range(j - 1)))
    tail = tuple(range(j, n))
    for w, c in inner._terms.items():
        full = (j - 1,) + w + tail
        terms[full] = terms.get(full, 0) + c
    return MultilinearPoly(n, terms)


# ---------------------------------------------------------------------------
# Canonical word order and GF(2) reduction
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def canonical_words(n: int) -> tuple[Word, ...]:
    """All degree-n words in canonical (lexicographic) order."""
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=16)
def word_index(n: int) -> dict[Word, int]:
    return {w: i for i, w in enumerate(canonical_words(n))}


def coefficient_vector(p: MultilinearPoly) -> list[int]:
    """Dense coefficient list in canonical word order."""
    vec = [0] * len(canonical_words(p.degree))
    idx = word_index(p.degree)
    for w, c in p._terms.items():
        vec[idx[w]] = c
    return vec


def reduce_mod2(p: MultilinearPoly) -> int:
    """Bitmask of odd coefficients: bit j is the parity at canonical index j."""
    bits = 0
    idx = word_index(p.degree)
    for w, c in p._terms.items():
        if c % 2:
            bits |= 1 << idx[w]
    return bits


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def poly_to_json_obj(p: MultilinearPoly) -> dict:
    return {
        "degree": p.degree,
        "terms": [
            {"permutation": [v + 1 for v in w], "coefficient": c} for w, c in p.terms()
        ],
    }


def poly_from_json_obj(obj: dict) -> MultilinearPoly:
    degree = int(obj["degree"])
    terms: dict[Word, int] = {}
    for entry in obj["terms"]:
        word = as_perm(int(v) - 1 for v in entry["permutation"])
        terms[word] = terms.get(word, 0) + int(entry["coefficient"])
    return MultilinearPoly(degree, terms)


def _word_text(w: Word) -> str:
    return ".".join(f"x{v + 1}" for v in w)


def poly_to_text(p: MultilinearPoly) -> str:
    """Human-readable form like "x1.x2.x3 - x2.x1.x3 + 2*x3.x2.x1"; "0" if zero."""
    if p.is_zero():
        return "0"
    pieces = []
    for i, (w, c) in enumerate(p.terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = _word_text(w) if mag == 1 else f"{mag}*{_word_text(w)}"
        if i == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def _bracket_term(p: Perm, latex: bool) -> str:
    if latex:
        letters = ",".join(f"x_{v + 1}" if v + 1 < 10 else f"x_{{{v + 1}}}" for v in p)
    else:
        letters = ",".join(f"x{v + 1}" for v in p)
    return f"[{letters}]"


def bracket_identity_text(ps: PermSet) -> str:
    """The summed-bracket identity for a set, e.g. "[x1,x2]+[x2,x1] = 0"."""
    if len(ps) == 0:
        return "0 = 0"
    return "+".join(_bracket_term(p, latex=False) for p in ps) + " = 0"


def bracket_identity_latex(ps: PermSet) -> str:
    """The same identity as a single displayed LaTeX equation."""
    if len(ps) == 0:
        body = "0 = 0"
    else:
        body = "+".join(_bracket_term(p, latex=True) for p in ps) + " = 0"
    return f"\\[ {body} \\]"
