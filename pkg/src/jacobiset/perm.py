"""Permutations, shuffles, and the permutation families behind bracket identities.

Conventions, fixed once for the whole package:

- A permutation of degree ``n`` is a tuple of the integers ``0 .. n-1`` in
  one-line notation: entry ``i`` is the image of point ``i``.  All text and
  JSON formats are 1-based; only parsing and printing translate.
- Composition is ``compose(sigma, tau)(i) == sigma(tau(i))``: the right
  factor acts first.  Both conventions exist in the literature and the
  family constructions below are only correct with this one.
- Cycle text is read so that every listed point maps to its predecessor in
  the cycle, wrapping around: ``(123)`` parses to one-line ``3 1 2``.
  Transpositions read the same under either convention, and printing uses
  the same rule, so cycle text round-trips.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    """The identity permutation of degree n.

    >>> identity(3)
    (0, 1, 2)
    """
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    return tuple(range(n))


def is_perm_word(word: Sequence[int]) -> bool:
    """True if word is a bijection of {0, ..., len(word)-1}."""
    return sorted(word) == list(range(len(word)))


def as_perm(word: Iterable[int]) -> Perm:
    """Validate and freeze a 0-based one-line word."""
    w = tuple(word)
    if not w or not is_perm_word(w):
        raise ValueError(f"not a permutation word: {w!r}")
    return w


def compose(sigma: Perm, tau: Perm) -> Perm:
    """Compose two permutations, the right factor first: result(i) = sigma(tau(i)).

    >>> compose((0, 2, 1), (1, 0, 2))   # 1-based: (1 3 2) after (2 1 3)
    (2, 0, 1)
    """
    if len(sigma) != len(tau):
        raise ValueError(f"degree mismatch: {len(sigma)} vs {len(tau)}")
    return tuple(sigma[t] for t in tau)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def first_two_swap(n: int) -> Perm:
    """The transposition exchanging the first two points, as an element of degree n."""
    if n < 2:
        raise ValueError("need degree >= 2 for the first-two swap")
    return (1, 0) + tuple(range(2, n))


def embed_perm(p: Perm, m: int) -> Perm:
    """Extend a permutation to degree m, fixing all new points."""
    if m < len(p):
        raise ValueError(f"cannot embed degree {len(p)} into degree {m}")
    return p + tuple(range(len(p), m))


class Shuffle(NamedTuple):
    """An (s, t)-shuffle: two strictly increasing maps with disjoint images.

    ``alpha`` lists the s positions taken by the first block and ``beta``
    the t positions taken by the second, together covering 0 .. s+t-1
    (0-based here; text formats are 1-based).
    """

    s: int
    t: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]


def make_shuffle(s: int, t: int, alpha: Iterable[int], beta: Iterable[int]) -> Shuffle:
    a, b = tuple(alpha), tuple(beta)
    if len(a) != s or len(b) != t:
        raise ValueError(f"shuffle shape mismatch: |alpha|={len(a)}, |beta|={len(b)}, s={s}, t={t}")
    if any(x >= y for x, y in zip(a, a[1:])) or any(x >= y for x, y in zip(b, b[1:])):
        raise ValueError("alpha and beta must be strictly increasing")
    if sorted(a + b) != list(range(s + t)):
        raise ValueError("alpha and beta must partition the positions 0 .. s+t-1")
    return Shuffle(s, t, a, b)


def enumerate_shuffles(s: int, t: int) -> list[Shuffle]:
    """All (s, t)-shuffles, ordered lexicographically by alpha.

    >>> [sh.alpha for sh in enumerate_shuffles(1, 1)]
    [(0,), (1,)]
    """
    if s < 0 or t < 0:
        raise ValueError("shuffle sizes must be nonnegative")
    positions = range(s + t)
    out = []
    for a in itertools.combinations(positions, s):
        taken = set(a)
        b = tuple(x for x in positions if x not in taken)
        out.append(Shuffle(s, t, a, b))
    return out


def enumerate_shuffles_first(s: int, t: int) -> list[Shuffle]:
    """All (s, t)-shuffles whose alpha starts at the first position."""
    if s < 1:
        raise ValueError("need s >= 1 when pinning alpha to the first position")
    out = []
    for a_rest in itertools.combinations(range(1, s + t), s - 1):
        a = (0,) + a_rest
        taken = set(a)
        b = tuple(x for x in range(s + t) if x not in taken)
        out.append(Shuffle(s, t, a, b))
    return out


@dataclass(frozen=True)
class PermSet:
    """A finite set of distinct permutations sharing one degree.

    Iteration and serialization always use the canonical order: ascending
    lexicographic on the one-line words.
    """

    degree: int
    members: frozenset[Perm]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        for w in self.members:
            if len(w) != self.degree:
                raise ValueError(f"member {w} does not have degree {self.degree}")
            if not is_perm_word(w):
                raise ValueError(f"member {w} is not a permutation word")

    def sorted_members(self) -> list[Perm]:
        return sorted(self.members)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.sorted_members())

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Perm) -> bool:
        return p in self.members

    def isdisjoint(self, other: "PermSet") -> bool:
        self._check_degree(other)
        return self.members.isdisjoint(other.members)

    def issubset(self, other: "PermSet") -> bool:
        self._check_degree(other)
        return self.members <= other.members

    def union(self, other: "PermSet") -> "PermSet":
        self._check_degree(other)
        return PermSet(self.degree, self.members | other.members)

    def symmetric_difference(self, other: "PermSet") -> "PermSet":
        self._check_degree(other)
        return PermSet(self.degree, self.members ^ other.members)

    def _check_degree(self, other: "PermSet") -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")


def perm_set(members: Iterable[Iterable[int]], degree: int | None = None) -> PermSet:
    """Build a PermSet from 0-based words, inferring the degree when possible."""
    frozen = frozenset(as_perm(w) for w in members)
    if degree is None:
        if not frozen:
            raise ValueError("degree is required for an empty set")
        degree = len(next(iter(frozen)))
    return PermSet(degree, frozen)


# ---------------------------------------------------------------------------
# Family constructions
# ---------------------------------------------------------------------------

def perm_from_shuffle(sh: Shuffle, k: int, l: int, i: int) -> Perm:
    """The degree-(k+l) permutation encoding one signed shuffle term.

    The plain shuffle permutation fixes the first k points, routes the next
    i points through beta in reverse, and the remaining l-i points through
    alpha; the sign (-1)^i is then absorbed by swapping the first two
    entries i times.  Requires an (l-i, i)-shuffle with alpha starting at
    the first position.
    """
    if not (k >= 1 and l >= 1 and 0 <= i <= l - 1):
        raise ValueError(f"need k,l >= 1 and 0 <= i <= l-1, got k={k}, l={l}, i={i}")
    if (sh.s, sh.t) != (l - i, i):
        raise ValueError(f"shuffle shape {(sh.s, sh.t)} inconsistent with (l-i, i)=({l - i}, {i})")
    if sh.alpha[0] != 0:
        raise ValueError("shuffle must have alpha starting at the first position")
    word = list(range(k)) + [k + b for b in reversed(sh.beta)] + [k + a for a in sh.alpha]
    if i % 2:
        word[0], word[1] = word[1], word[0]
    return tuple(word)


def bracket_expansion_set(k: int, l: int) -> PermSet:
    """The 2^(l-1) permutations whose plus-signed sum expands the nested
    bracket of the first k letters against the last l letters.

    >>> bracket_expansion_set(1, 2).sorted_members()
    [(0, 1, 2), (2, 0, 1)]
    """
    if k < 1 or l < 1:
        raise ValueError("both block sizes must be at least 1")
    members = set()
    for i in range(l):
        for sh in enumerate_shuffles_first(l - i, i):
            members.add(perm_from_shuffle(sh, k, l, i))
    out = PermSet(k + l, frozenset(members))
    assert len(out) == 2 ** (l - 1), f"expansion set size {len(out)} != 2^{l - 1}"
    return out


def block_swap(k: int, l: int) -> Perm:
    """The permutation exchanging the first l points with the last k points,
    shifting each block as one piece.

    >>> block_swap(2, 2)
    (2, 3, 0, 1)
    """
    if k < 1 or l < 1:
        raise ValueError("both block sizes must be at least 1")
    return tuple(i + k if i < l else i - l for i in range(k + l))


def jacobi_family(k: int, l: int, n: int) -> PermSet:
    """The degree-n family of 2^(k-1) + 2^(l-1) permutations whose summed
    left-normed brackets vanish in every Lie ring.

    The family is the expansion set for the (k, l) block bracket together
    with the block-swapped expansion set for the (l, k) bracket, embedded
    into degree n.  The two halves are always disjoint, which the
    construction asserts.
    """
    if k + l > n:
        raise ValueError(f"blocks of sizes {k} and {l} do not fit in degree {n}")
    first = bracket_expansion_set(k, l)
    second = left_translate(block_swap(k, l), bracket_expansion_set(l, k))
    assert first.isdisjoint(second), "expansion halves unexpectedly intersect"
    return embed(first.union(second), n)


def embed(ps: PermSet, m: int) -> PermSet:
    """Extend every member to degree m, fixing all new points."""
    if m < ps.degree:
        raise ValueError(f"cannot embed degree {ps.degree} into degree {m}")
    return PermSet(m, frozenset(embed_perm(p, m) for p in ps.members))


def left_translate(sigma: Perm, ps: PermSet) -> PermSet:
    """Compose every member with sigma on the left."""
    if len(sigma) != ps.degree:
        raise ValueError(f"degree mismatch: {len(sigma)} vs {ps.degree}")
    return PermSet(ps.degree, frozenset(compose(sigma, tau) for tau in ps.members))


def right_swap(ps: PermSet) -> PermSet:
    """Compose every member on the right with the first-two swap."""
    swap = first_two_swap(ps.degree)
    return PermSet(ps.degree, frozenset(compose(tau, swap) for tau in ps.members))


# ---------------------------------------------------------------------------
# Text formats (1-based)
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_one_line(p: Perm) -> str:
    """One-line text: "3 1 2" for the word (2, 0, 1)."""
    return " ".join(str(v + 1) for v in p)


def format_cycles(p: Perm) -> str:
    """Cycle text, "()" for the identity.

    Cycles are written so that each point maps to its predecessor; orbits are
    listed from their smallest point, smallest first.
    """
    seen = [False] * len(p)
    inv = inverse(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = inv[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = inv[nxt]
        parts.append("(" + " ".join(str(v + 1) for v in cycle) + ")")
    return "".join(parts) if parts else "()"


def _parse_cycle_points(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    if re.search(r"[\s,]", body):
        points = [int(tok) for tok in re.split(r"[\s,]+", body) if tok]
    else:
        # compact form like (123): single-digit points only
        points = [int(ch) for ch in body]
    if any(v < 1 for v in points):
        raise ValueError(f"cycle points must be >= 1: ({body})")
    if len(set(points)) != len(points):
        raise ValueError(f"repeated point in cycle: ({body})")
    return points


def perm_from_cycles(text: str, degree: int) -> Perm:
    """Parse a product of cycles like "(1 3 2)" or "(12)(34)" at the given degree.

    In a product the rightmost cycle acts first.
    """
    chunks = _CYCLE_RE.findall(text)
    if "".join(_CYCLE_RE.sub("", text).split()):
        raise ValueError(f"stray text outside cycles: {text!r}")
    if not chunks:
        raise ValueError(f"no cycles found in {text!r}")
    acc = identity(degree)
    for body in chunks:
        points = _parse_cycle_points(body)
        if points and max(points) > degree:
            raise ValueError(f"cycle point {max(points)} exceeds degree {degree}")
        word = list(range(degree))
        # each point maps to its predecessor in the written cycle
        for point, pred in zip(points, points[-1:] + points[:-1]):
            word[point - 1] = pred - 1
        acc = compose(acc, as_perm(word))
    return acc


def min_cycle_degree(text: str) -> int:
    """Smallest degree on which the cycle text can act."""
    points = []
    for body in _CYCLE_RE.findall(text):
        points.extend(_parse_cycle_points(body))
    return max(points) if points else 1


def parse_perm(text: str, degree: int | None = None) -> Perm:
    """Parse a single permutation from one-line or cycle text."""
    text = text.strip()
    if "(" in text:
        if degree is None:
            degree = min_cycle_degree(text)
        return perm_from_cycles(text, degree)
    values = [int(tok) for tok in re.split(r"[\s,]+", text) if tok]
    if not values:
        raise ValueError("empty permutation text")
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ValueError(f"not a 1-based one-line word: {text!r}")
    word = tuple(v - 1 for v in values)
    if degree is not None and len(word) != degree:
        raise ValueError(f"one-line word has degree {len(word)}, expected {degree}")
    return word


def _split_cycle_line(line: str) -> list[str]:
    """Split a line of cycle text into permutation tokens.

    Whitespace between parenthesised groups separates permutations; groups
    written back to back form a product.
    """
    tokens = []
    current = ""
    depth = 0
    for ch in line:
        if ch == "(":
            depth += 1
            current += ch
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses: {line!r}")
            current += ch
        elif ch.isspace() and depth == 0:
            if current:
                tokens.append(current)
                current = ""
        else:
            current += ch
    if depth != 0:
        raise ValueError(f"unbalanced parentheses: {line!r}")
    if current:
        tokens.append(current)
    return tokens


def parse_perm_set(text: str, degree: int | None = None) -> PermSet:
    """Parse a permutation set.

    Accepted forms:
      - one permutation per line, one-line ("3 1 2") or cycles ("(1 3 2)");
        several cycle-form permutations may share a line, separated by spaces;
      - a JSON array of 1-based one-line words, e.g. [[1,2,3],[2,3,1]];
      - a JSON object with a "permutations" key holding such an array.

    The degree defaults to the largest point mentioned anywhere.
    """
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = data["permutations"]
        words = [tuple(int(v) - 1 for v in row) for row in data]
        for w in words:
            if not is_perm_word(w):
                raise ValueError(f"not a permutation word: {[v + 1 for v in w]}")
        if degree is None:
            degree = max((len(w) for w in words), default=1)
        return PermSet(degree, frozenset(embed_perm(as_perm(w), degree) for w in words)) \
            if words else PermSet(degree, frozenset())

    one_line_rows: list[str] = []
    cycle_rows: list[str] = []
    for line in stripped.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "(" in line:
            cycle_rows.extend(_split_cycle_line(line))
        else:
            one_line_rows.append(line)

    one_line = [parse_perm(row) for row in one_line_rows]
    if degree is None:
        candidates = [len(w) for w in one_line] + [min_cycle_degree(row) for row in cycle_rows]
        degree = max(candidates, default=1)
    for w in one_line:
        if len(w) != degree:
            raise ValueError(f"one-line word {format_one_line(w)!r} does not have degree {degree}")
    members = set(one_line)
    members.update(perm_from_cycles(row, degree) for row in cycle_rows)
    return PermSet(degree, frozenset(members))


def format_perm_set(ps: PermSet, style: str = "lines") -> str:
    """Render a PermSet in canonical order.

    style="lines": one one-line word per line.  style="bracket": a JSON array.
    """
    rows = ps.sorted_members()
    if style == "lines":
        return "\n".join(format_one_line(p) for p in rows)
    if style == "bracket":
        return json.dumps([[v + 1 for v in p] for p in rows])
    raise ValueError(f"unknown style {style!r}")
