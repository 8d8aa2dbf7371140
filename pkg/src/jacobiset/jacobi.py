"""Membership tests, basis machinery, counting, and coverage searches for
permutation sets whose summed left-normed brackets vanish.

A set is called Jacobi when the identity holds over the integers and
mod-2 Jacobi when it holds over fields of characteristic 2.  The mod-2
sets form a vector space under symmetric difference; the translated
one-block families below give a concrete basis of it, and the same sets
form a basis of the integer kernel of the bracket map.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable

from . import exactla, freealg, perm
from .exactla import (
    GF2Matrix,
    IntegerLattice,
    bracket_map_matrix,
    bracket_map_matrix_gf2,
    gf2_rank,
    gf2_solve,
    int_kernel_basis,
    int_rank,
)
from .freealg import (
    bracket_image,
    canonical_words,
    coefficient_vector,
    expand_bracket_recursive,
    sum_of_set,
    word_index,
)
from .perm import (
    Perm,
    PermSet,
    compose,
    embed,
    first_two_swap,
    identity,
    jacobi_family,
    left_translate,
    right_swap,
)

JACOBI_LISTING_CAP = 3
JACOBI_COUNT_CAP = 4
MOD2_COUNT_CAP = 7
COVER_DEGREE_CAP = 4

COVER_MODEL_NOTE = (
    "candidates are all left-translates of the two-block families at this degree, "
    "optionally multiplied on the right by the first-two swap; a cover is a "
    "pairwise-disjoint selection of candidates whose union is the target. "
    "Translation, the right swap and embedding all distribute over disjoint "
    "unions, so anything assembled from the families by those operations "
    "decomposes into such a selection."
)


def is_jacobi(ps: PermSet) -> bool:
    """True when the summed bracket expansion of the set vanishes exactly."""
    return bracket_image(sum_of_set(ps)).is_zero()


def is_jacobi_mod2(ps: PermSet) -> bool:
    """True when the summed bracket expansion vanishes mod 2.

    Computed over the integers first: the mod-2 image of the bracket map is
    the bracket map of the mod-2 image, so even coefficients are exactly
    membership in the mod-2 kernel.
    """
    image = bracket_image(sum_of_set(ps))
    return all(c % 2 == 0 for _, c in image.terms())


def mod2_residual(ps: PermSet) -> freealg.MultilinearPoly:
    """The mod-2 residual of the set's bracket image: one +1 term per word
    with an odd coefficient.  Zero exactly when the set is mod-2 Jacobi."""
    image = bracket_image(sum_of_set(ps))
    return freealg.MultilinearPoly(ps.degree, {w: 1 for w, c in image.terms() if c % 2})


# ---------------------------------------------------------------------------
# The translated one-block basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisElement:
    """One basis set: the (k, 1) family translated by a permutation sending
    point k+1 (1-based) to 1."""

    k: int
    sigma: Perm
    perms: PermSet

    def __post_init__(self) -> None:
        if self.sigma[self.k] != 0:
            raise ValueError(f"translating permutation must send point {self.k + 1} to 1")


def kernel_set_basis(n: int) -> list[BasisElement]:
    """All (n-1) * (n-1)! translated one-block families, ordered by block
    size then translator.

    >>> [be.k for be in kernel_set_basis(2)]
    [1]
    """
    if n < 2:
        raise ValueError("need degree at least 2")
    out = []
    for k in range(1, n):
        fam = jacobi_family(k, 1, n)
        for sigma in canonical_words(n):
            if sigma[k] == 0:
                out.append(BasisElement(k, sigma, left_translate(sigma, fam)))
    return out


def basis_indicator_matrix(basis: list[BasisElement], n: int) -> GF2Matrix:
    """n! x len(basis) GF(2) matrix; bit (r, j) set when the r-th canonical
    permutation belongs to the j-th basis set."""
    idx = word_index(n)
    rows = [0] * math.factorial(n)
    for j, be in enumerate(basis):
        for p in be.perms.members:
            rows[idx[p]] |= 1 << j
    return GF2Matrix(math.factorial(n), len(basis), rows)


def indicator_bits(ps: PermSet) -> int:
    """The set's indicator bitmask over the canonical permutations."""
    idx = word_index(ps.degree)
    bits = 0
    for p in ps.members:
        bits |= 1 << idx[p]
    return bits


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    claim: str
    status: str  # "verified" or "falsified"
    witness: object = None
    seconds: float = 0.0


@dataclass
class Report:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(c.status == "verified" for c in self.checks)

    def add(self, claim: str, ok: bool, witness: object, started: float) -> None:
        self.checks.append(
            CheckResult(claim, "verified" if ok else "falsified", witness, time.perf_counter() - started)
        )

    def to_json_obj(self, include_timings: bool = False) -> dict:
        checks = []
        for c in self.checks:
            entry: dict = {"claim": c.claim, "status": c.status, "witness": c.witness}
            if include_timings:
                entry["seconds"] = c.seconds
            checks.append(entry)
        return {"title": self.title, "all_verified": self.all_verified, "checks": checks}


def _one_based(p: Perm) -> list[int]:
    return [v + 1 for v in p]


def verify_kernel_basis(n: int, lattice_check: bool | None = None) -> Report:
    """Check that the translated one-block families behave as a basis of the
    bracket-map kernel at degree n.

    Checks: every set satisfies the integer identity; their sum vectors are
    independent (mod 2, which certifies rational independence as well); the
    family count matches the kernel rank; and, when the integer route is
    enabled (default for n <= 5), every integer kernel basis vector is an
    integer combination of the family sums.
    Failures are reported, not raised.
    """
    if n < 2:
        raise ValueError("need degree at least 2")
    if lattice_check is None:
        lattice_check = n <= 5
    report = Report(f"kernel basis verification at degree {n}")
    basis = kernel_set_basis(n)
    m = len(basis)

    t0 = time.perf_counter()
    bad = next((be for be in basis if not is_jacobi(be.perms)), None)
    report.add(
        "every basis set satisfies the integer bracket identity",
        bad is None,
        None if bad is None else {"k": bad.k, "sigma": _one_based(bad.sigma)},
        t0,
    )

    t0 = time.perf_counter()
    bmat = basis_indicator_matrix(basis, n)
    rank2 = gf2_rank(bmat)
    report.add(
        "basis sum vectors are independent over GF(2)",
        rank2 == m,
        {"rank": rank2, "expected": m},
        t0,
    )

    t0 = time.perf_counter()
    # full rank mod 2 certifies rational independence: a rational dependence
    # scales to a primitive integer one, which would survive reduction mod 2
    report.add(
        "basis sum vectors are independent over the rationals",
        rank2 == m,
        {"rank_mod2": rank2, "expected": m, "route": "full GF(2) rank certificate"},
        t0,
    )

    t0 = time.perf_counter()
    kernel_rank_2 = math.factorial(n) - gf2_rank(bracket_map_matrix_gf2(n))
    report.add(
        "basis count equals the GF(2) kernel rank",
        kernel_rank_2 == m,
        {"kernel_rank_mod2": kernel_rank_2, "basis_count": m},
        t0,
    )

    if lattice_check:
        t0 = time.perf_counter()
        mat = bracket_map_matrix(n)
        kernel_rank_q = mat.cols - int_rank(mat)
        report.add(
            "basis count equals the rational kernel rank",
            kernel_rank_q == m,
            {"kernel_rank_rational": kernel_rank_q, "basis_count": m},
            t0,
        )

        t0 = time.perf_counter()
        sums = [coefficient_vector(sum_of_set(be.perms)) for be in basis]
        lat = IntegerLattice(sums)
        kernel_vectors = int_kernel_basis(mat)
        failures = [i for i, vec in enumerate(kernel_vectors) if lat.coordinates(vec) is None]
        report.add(
            "every integer kernel basis vector is an integer combination of the basis sums",
            not failures,
            {"kernel_vectors_checked": len(kernel_vectors), "failures": failures},
            t0,
        )
    return report


# ---------------------------------------------------------------------------
# Decomposition of mod-2 sets
# ---------------------------------------------------------------------------

class NotTwoJacobiError(ValueError):
    """Raised for decomposition requests on sets that fail the mod-2 identity;
    carries the nonzero residual as a certificate."""

    def __init__(self, residual: freealg.MultilinearPoly):
        super().__init__("set does not satisfy the mod-2 bracket identity")
        self.residual = residual


def decompose_mod2(ps: PermSet) -> list[BasisElement]:
    """Write a mod-2 Jacobi set as a symmetric difference of basis sets.

    Solves the GF(2) linear system on indicator vectors, taking the solution
    with all free variables zero, and re-checks the recombination before
    returning.  Non mod-2-Jacobi inputs are rejected with their residual.
    """
    residual = mod2_residual(ps)
    if not residual.is_zero():
        raise NotTwoJacobiError(residual)
    if ps.degree < 2:
        return []  # only the empty set reaches here at degree 1
    basis = kernel_set_basis(ps.degree)
    bmat = basis_indicator_matrix(basis, ps.degree)
    x = gf2_solve(bmat, indicator_bits(ps))
    if x is None:
        raise ArithmeticError("mod-2 set not in the basis span; spanning claim falsified")
    chosen = [be for j, be in enumerate(basis) if (x >> j) & 1]
    recombined = PermSet(ps.degree, frozenset())
    for be in chosen:
        recombined = recombined.symmetric_difference(be.perms)
    if recombined.members != ps.members:
        raise ArithmeticError("recombination check failed after decomposition")
    return chosen


# ---------------------------------------------------------------------------
# Exhaustive counting
# ---------------------------------------------------------------------------

def _gray_code_jacobi_count(n: int) -> int:
    """Count subsets with vanishing summed expansion by a Gray-code walk.

    The accumulated coefficient vector lives in one big integer, 16 bits per
    canonical word with a bias of 2^15: field arithmetic never overflows
    because coefficients are bounded by the number of permutations (at most
    24 here), so each Gray step is a single add or subtract and the zero
    test is one comparison.
    """
    words = canonical_words(n)
    size = len(words)
    idx = word_index(n)
    shift = 16
    bias = 1 << 15
    bias_pattern = sum(bias << (shift * j) for j in range(size))
    deltas = []
    for sigma in words:
        d = 0
        for w, c in expand_bracket_recursive(sigma).terms():
            d += c << (shift * idx[w])
        deltas.append(d)
    acc = bias_pattern
    mask = 0
    count = 1  # the empty set
    for m in range(1, 1 << size):
        bit = (m & -m).bit_length() - 1
        b = 1 << bit
        mask ^= b
        if mask & b:
            acc += deltas[bit]
        else:
            acc -= deltas[bit]
        if acc == bias_pattern:
            count += 1
    return count


def _all_subsets(n: int) -> Iterable[PermSet]:
    words = canonical_words(n)
    for mask in range(1 << len(words)):
        members = frozenset(words[i] for i in range(len(words)) if (mask >> i) & 1)
        yield PermSet(n, members)


def enumerate_jacobi(n: int) -> tuple[int, list[PermSet] | None]:
    """Exact count of Jacobi subsets at degree n, with the full listing for
    n <= 3.  Counting runs the Gray-code sweep; the listing is produced by an
    independent per-subset test and must agree with the sweep.
    """
    if n > JACOBI_COUNT_CAP:
        raise ValueError(f"Jacobi counting is capped at degree {JACOBI_COUNT_CAP}")
    count = _gray_code_jacobi_count(n)
    listing = None
    if n <= JACOBI_LISTING_CAP:
        listing = [ps for ps in _all_subsets(n) if is_jacobi(ps)]
        listing.sort(key=lambda ps: (len(ps), ps.sorted_members()))
        if len(listing) != count:
            raise ArithmeticError(
                f"sweep count {count} disagrees with exhaustive listing {len(listing)}"
            )
    return count, listing


def count_jacobi_mod2(n: int) -> int:
    """The number of mod-2 Jacobi subsets: 2 to the mod-2 kernel rank.

    For n <= 3 the value is re-confirmed by testing every subset.
    """
    if n > MOD2_COUNT_CAP:
        raise ValueError(f"mod-2 counting is capped at degree {MOD2_COUNT_CAP}")
    rank = gf2_rank(bracket_map_matrix_gf2(n))
    count = 1 << (math.factorial(n) - rank)
    if n <= 3:
        brute = sum(1 for ps in _all_subsets(n) if is_jacobi_mod2(ps))
        if brute != count:
            raise ArithmeticError(f"kernel count {count} disagrees with exhaustive count {brute}")
    return count


# ---------------------------------------------------------------------------
# Closure properties
# ---------------------------------------------------------------------------

def _generate_subgroup(gens: Iterable[Perm], n: int) -> PermSet:
    elems = {identity(n)}
    frontier = list(elems)
    gens = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return PermSet(n, frozenset(elems))


def _generator_pool(n: int) -> list[Perm]:
    pool = []
    for i in range(n - 1):
        word = list(range(n))
        word[i], word[i + 1] = word[i + 1], word[i]
        pool.append(tuple(word))
    if n >= 3:
        pool.append(tuple(list(range(1, n)) + [0]))  # an n-cycle
    return pool


def _random_known_jacobi(rng: random.Random, n: int) -> PermSet:
    k = rng.randint(1, n - 1)
    l = rng.randint(1, n - k)
    sigma = tuple(rng.sample(range(n), n))
    out = left_translate(sigma, jacobi_family(k, l, n))
    if rng.random() < 0.5:
        out = right_swap(out)
    return out


def closure_property_suite(n: int, trials: int = 50, seed: int = 2024) -> Report:
    """Randomized and small-exhaustive checks that the Jacobi property
    survives translation, the right swap, embedding, disjoint union, and
    passage to supergroups containing the first-two swap or a 3-cycle.

    Deterministic for a fixed seed; failures are reported, not raised.
    """
    if n < 2 or n > 6:
        raise ValueError("closure suite runs for degrees 2..6")
    rng = random.Random(seed)
    report = Report(f"closure property suite at degree {n}, {trials} trials")

    def run_trials(claim: str, fn) -> None:
        started = time.perf_counter()
        witness = None
        for t in range(trials):
            w = fn()
            if w is not None:
                witness = {"trial": t, **w}
                break
        report.add(claim, witness is None, witness, started)

    def translated_family() -> dict | None:
        ps = _random_known_jacobi(rng, n)
        if not is_jacobi(ps):
            return {"set": [_one_based(p) for p in ps]}
        return None

    run_trials("translated two-block families satisfy the identity", translated_family)

    def left_translation() -> dict | None:
        ps = _random_known_jacobi(rng, n)
        sigma = tuple(rng.sample(range(n), n))
        if not is_jacobi(left_translate(sigma, ps)):
            return {"sigma": _one_based(sigma), "set": [_one_based(p) for p in ps]}
        return None

    run_trials("left translation preserves the identity", left_translation)

    def swap_right() -> dict | None:
        ps = _random_known_jacobi(rng, n)
        if not is_jacobi(right_swap(ps)):
            return {"set": [_one_based(p) for p in ps]}
        return None

    run_trials("right multiplication by the first-two swap preserves the identity", swap_right)

    def embedding() -> dict | None:
        ps = _random_known_jacobi(rng, n)
        m = n + rng.randint(1, 2)
        if not is_jacobi(embed(ps, m)):
            return {"target_degree": m, "set": [_one_based(p) for p in ps]}
        return None

    run_trials("embedding into a larger degree preserves the identity", embedding)

    def disjoint_union() -> dict | None:
        a = _random_known_jacobi(rng, n)
        for _ in range(20):
            b = _random_known_jacobi(rng, n)
            if a.isdisjoint(b):
                if not is_jacobi(a.union(b)):
                    return {
                        "first": [_one_based(p) for p in a],
                        "second": [_one_based(p) for p in b],
                    }
                return None
        return None  # no disjoint partner found; vacuous trial

    run_trials("disjoint unions preserve the identity", disjoint_union)

    pool = _generator_pool(n)
    swap = first_two_swap(n)

    def subgroup_checks(mandatory: Perm, label: str) -> None:
        started = time.perf_counter()
        witness = None
        combos = [()] + [(g,) for g in pool] + [
            (g, h) for i, g in enumerate(pool) for h in pool[i + 1:]
        ]
        for extra in combos:
            group = _generate_subgroup((mandatory,) + extra, n)
            if not is_jacobi(group):
                witness = {"generators": [_one_based(g) for g in (mandatory,) + extra],
                           "order": len(group)}
                break
        report.add(
            f"subgroups containing {label} satisfy the identity "
            f"({len(combos)} generator combinations)",
            witness is None,
            witness,
            started,
        )

    subgroup_checks(swap, "the first-two swap")
    if n >= 3:
        subgroup_checks(perm.perm_from_cycles("(123)", n), "a 3-cycle")

    return report


# ---------------------------------------------------------------------------
# Covers by translated families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverCandidate:
    k: int
    l: int
    swapped: bool
    sigma: Perm
    perms: PermSet

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "swapped": self.swapped,
            "sigma": _one_based(self.sigma),
            "perms": [_one_based(p) for p in self.perms],
        }


@dataclass
class CoverResult:
    found: bool
    cover: list[CoverCandidate] | None
    candidates: int
    explored: int
    note: str = COVER_MODEL_NOTE

    def to_json_obj(self) -> dict:
        return {
            "status": "cover-found" if self.found else "no-cover",
            "cover": None if self.cover is None else [c.to_json_obj() for c in self.cover],
            "candidates": self.candidates,
            "explored": self.explored,
            "note": self.note,
        }


def _cover_candidates(target: PermSet) -> list[CoverCandidate]:
    n = target.degree
    seen: set[frozenset[Perm]] = set()
    out = []
    for k in range(1, n):
        for l in range(1, n - k + 1):
            fam = jacobi_family(k, l, n)
            for sigma in canonical_words(n):
                base = left_translate(sigma, fam)
                for swapped in (False, True):
                    ps = right_swap(base) if swapped else base
                    if not ps.issubset(target) or ps.members in seen:
                        continue
                    seen.add(ps.members)
                    out.append(CoverCandidate(k, l, swapped, sigma, ps))
    return out


def find_disjoint_cover(target: PermSet) -> CoverResult:
    """Search for a partition of the target into translated two-block families.

    Depth-first search branching on the uncovered permutation contained in
    the fewest usable candidates; an exhausted search is a proof that no
    partition exists under the candidate model described in the result note.
    Found covers are re-verified (pairwise disjoint, union equal) before
    being returned.
    """
    if target.degree > COVER_DEGREE_CAP:
        raise ValueError(f"cover search is capped at degree {COVER_DEGREE_CAP}")
    candidates = _cover_candidates(target)
    containing: dict[Perm, list[int]] = {p: [] for p in target.members}
    for ci, cand in enumerate(candidates):
        for p in cand.perms.members:
            containing[p].append(ci)
    explored = 0
    chosen: list[int] = []

    def search(remaining: frozenset[Perm]) -> bool:
        nonlocal explored
        if not remaining:
            return True
        explored += 1
        best = min(
            remaining,
            key=lambda p: sum(1 for ci in containing[p] if candidates[ci].perms.members <= remaining),
        )
        for ci in containing[best]:
            members = candidates[ci].perms.members
            if members <= remaining:
                chosen.append(ci)
                if search(remaining - members):
                    return True
                chosen.pop()
        return False

    found = search(target.members)
    cover = None
    if found:
        cover = [candidates[ci] for ci in chosen]
        union: set[Perm] = set()
        for cand in cover:
            if union & cand.perms.members:
                raise ArithmeticError("cover verification failed: overlapping candidates")
            union |= cand.perms.members
        if union != set(target.members):
            raise ArithmeticError("cover verification failed: wrong union")
    return CoverResult(found, cover, len(candidates), explored)
