"""Exact linear algebra over the integers and over GF(2).

Integer matrices are dense lists of arbitrary-precision entries; rank is
computed by fraction-free (Bareiss) elimination and certified against
elimination modulo two fixed 62-bit primes.  GF(2) matrices pack each row
into one Python integer, so row operations are single xors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import freealg
from .freealg import canonical_words, expand_bracket_recursive, word_index

# fixed 62-bit primes for the modular rank cross-check
_CHECK_PRIMES = (2305843009213693967, 2305843009213693973)

BETA_MATRIX_CAP = 7
INT_ELIMINATION_CAP = 720  # largest dimension accepted by integer elimination


@dataclass
class IntMatrix:
    rows: int
    cols: int
    entries: list[list[int]]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid inconsistent with declared dimensions")

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


@dataclass
class GF2Matrix:
    rows: int
    cols: int
    row_bits: list[int]

    def __post_init__(self) -> None:
        if len(self.row_bits) != self.rows:
            raise ValueError("row count inconsistent with bit rows")
        if any(bits >> self.cols for bits in self.row_bits):
            raise ValueError("row bits exceed declared column count")

    def to_bitstrings(self) -> list[str]:
        """Rows as '0'/'1' strings, column 0 leftmost."""
        return [
            "".join("1" if (bits >> j) & 1 else "0" for j in range(self.cols))
            for bits in self.row_bits
        ]


def gf2_from_int_matrix(m: IntMatrix) -> GF2Matrix:
    rows = [sum((v & 1) << j for j, v in enumerate(row)) for row in m.entries]
    return GF2Matrix(m.rows, m.cols, rows)


# ---------------------------------------------------------------------------
# The bracket-map matrix
# ---------------------------------------------------------------------------

def bracket_map_matrix(n: int, cap: int = BETA_MATRIX_CAP) -> IntMatrix:
    """The n! x n! matrix of the bracket-expansion map in the canonical word
    basis: column j holds the expansion of the j-th canonical permutation.
    """
    if n > cap:
        raise ValueError(f"degree {n} exceeds the matrix cap {cap}")
    words = canonical_words(n)
    idx = word_index(n)
    size = len(words)
    entries = [[0] * size for _ in range(size)]
    for j, sigma in enumerate(words):
        for w, c in expand_bracket_recursive(sigma).terms():
            entries[idx[w]][j] = c
    return IntMatrix(size, size, entries)


def bracket_map_matrix_gf2(n: int, cap: int = BETA_MATRIX_CAP) -> GF2Matrix:
    """The bracket-map matrix reduced mod 2, built without the dense integer grid."""
    if n > cap:
        raise ValueError(f"degree {n} exceeds the matrix cap {cap}")
    words = canonical_words(n)
    idx = word_index(n)
    size = len(words)
    rows = [0] * size
    for j, sigma in enumerate(words):
        for w, _ in expand_bracket_recursive(sigma).terms():
            rows[idx[w]] |= 1 << j
    return GF2Matrix(size, size, rows)


# ---------------------------------------------------------------------------
# Integer elimination
# ---------------------------------------------------------------------------

def _check_int_dims(m: IntMatrix) -> None:
    if max(m.rows, m.cols) > INT_ELIMINATION_CAP:
        raise ValueError(
            f"matrix {m.rows}x{m.cols} exceeds the integer elimination cap {INT_ELIMINATION_CAP}"
        )


def _bareiss_echelon(entries: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination.

    Returns the echelon rows (pivot rows only, zero rows dropped) and the
    list of pivot columns.  Every division is by the previous pivot and is
    exact; entries stay minors of the input matrix.  Pivots are chosen with
    smallest absolute value to limit growth.
    """
    work = [row[:] for row in entries if any(row)]
    cols = len(entries[0]) if entries else 0
    pivot_cols: list[int] = []
    prev_piv = 1
    r = 0
    for c in range(cols):
        if r >= len(work):
            break
        best = None
        for i in range(r, len(work)):
            v = work[i][c]
            if v and (best is None or abs(v) < abs(work[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best is None:
            continue
        work[r], work[best] = work[best], work[r]
        piv_row = work[r]
        piv = piv_row[c]
        nxt = work[: r + 1]
        for i in range(r + 1, len(work)):
            row = work[i]
            v = row[c]
            if v:
                new = [0] * (c + 1) + [
                    (piv * row[j] - v * piv_row[j]) // prev_piv for j in range(c + 1, cols)
                ]
            else:
                new = [0] * (c + 1) + [
                    (piv * row[j]) // prev_piv for j in range(c + 1, cols)
                ]
            if any(new):
                nxt.append(new)
        work = nxt
        pivot_cols.append(c)
        prev_piv = piv
        r += 1
    return work[: len(pivot_cols)], pivot_cols


def rank_mod_prime(m: IntMatrix, p: int) -> int:
    """Rank of the matrix over the prime field F_p (a lower bound for the
    rational rank, exact when no relevant minor vanishes mod p)."""
    work = []
    for row in m.entries:
        reduced = [v % p for v in row]
        if any(reduced):
            work.append(reduced)
    rank = 0
    for c in range(m.cols):
        piv_i = None
        for i in range(rank, len(work)):
            if work[i][c]:
                piv_i = i
                break
        if piv_i is None:
            continue
        work[rank], work[piv_i] = work[piv_i], work[rank]
        piv_row = work[rank]
        inv = pow(piv_row[c], -1, p)
        nxt = work[: rank + 1]
        for i in range(rank + 1, len(work)):
            row = work[i]
            if row[c]:
                f = (row[c] * inv) % p
                row = [(a - f * b) % p for a, b in zip(row, piv_row)]
            if any(row):
                nxt.append(row)
        work = nxt
        rank += 1
        if rank == len(work):
            break
    return rank


def int_rank(m: IntMatrix) -> int:
    """Exact rational rank by fraction-free elimination, cross-checked by
    elimination modulo two fixed large primes.  Disagreement means an
    internal error and raises.
    """
    _check_int_dims(m)
    _, pivot_cols = _bareiss_echelon(m.entries)
    rank = len(pivot_cols)
    for p in _CHECK_PRIMES:
        modular = rank_mod_prime(m, p)
        if modular != rank:
            raise ArithmeticError(
                f"rank mismatch: fraction-free {rank} vs mod-{p} {modular}"
            )
    return rank


def _primitive(vec: list[int]) -> list[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        vec = [v // g for v in vec]
    for v in vec:
        if v:
            return vec if v > 0 else [-x for x in vec]
    return vec


def int_kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Integer vectors of content 1 spanning the rational kernel.

    One vector per free column, obtained by exact back-substitution on the
    fraction-free echelon form; each is normalized to gcd 1 with positive
    first nonzero entry.  Ordered by free column.
    """
    _check_int_dims(m)
    echelon, pivot_cols = _bareiss_echelon(m.entries)
    free_cols = [c for c in range(m.cols) if c not in set(pivot_cols)]
    basis = []
    for f in free_cols:
        x: list[Fraction] = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for r in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[r]
            row = echelon[r]
            s = sum(row[j] * x[j] for j in range(c + 1, m.cols) if x[j])
            x[c] = -s / row[c]
        lcm = 1
        for v in x:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        basis.append(_primitive([int(v * lcm) for v in x]))
    return basis


class IntegerLattice:
    """The integer row lattice generated by a list of vectors.

    Triangularized once by integer row operations (Euclidean pivoting), with
    every work row carrying its expression in the original generators, so
    membership queries return explicit integer coefficients.
    """

    def __init__(self, vectors: list[list[int]]):
        if vectors and any(len(v) != len(vectors[0]) for v in vectors):
            raise ValueError("generating vectors must share one dimension")
        self.vectors = [list(v) for v in vectors]
        self.dim = len(vectors[0]) if vectors else 0
        m = len(vectors)
        # each work row is [vector | expression in the original vectors]
        work = [list(v) + [1 if j == i else 0 for j in range(m)] for i, v in enumerate(vectors)]
        pivots: list[tuple[int, int]] = []  # (row, col)
        r = 0
        for c in range(self.dim):
            while True:
                live = [i for i in range(r, len(work)) if work[i][c]]
                if not live:
                    break
                i0 = min(live, key=lambda i: abs(work[i][c]))
                work[r], work[i0] = work[i0], work[r]
                if len(live) == 1:
                    break
                piv = work[r][c]
                prow = work[r]
                for i in range(r + 1, len(work)):
                    q = work[i][c] // piv
                    if q:
                        work[i] = [a - q * b for a, b in zip(work[i], prow)]
            if r < len(work) and work[r][c]:
                if work[r][c] < 0:
                    work[r] = [-v for v in work[r]]
                pivots.append((r, c))
                r += 1
                if r == len(work):
                    break
        self._work = work
        self._pivots = pivots

    def coordinates(self, target: list[int]) -> list[int] | None:
        """Integer coefficients expressing target in the generators, or None.

        A returned witness is re-verified against the generators before it is
        handed back.
        """
        if len(target) != self.dim:
            raise ValueError(f"target has dimension {len(target)}, lattice has {self.dim}")
        m = len(self.vectors)
        t = list(target)
        coeffs = [0] * m
        for row_i, c in self._pivots:
            if t[c] == 0:
                continue
            piv = self._work[row_i][c]
            if t[c] % piv:
                return None
            q = t[c] // piv
            row = self._work[row_i]
            for j in range(self.dim):
                t[j] -= q * row[j]
            for j in range(m):
                coeffs[j] += q * row[self.dim + j]
        if any(t):
            return None
        for j in range(self.dim):
            if sum(coeffs[i] * self.vectors[i][j] for i in range(m)) != target[j]:
                raise ArithmeticError("lattice reduction produced an inconsistent witness")
        return coeffs


def lattice_membership(vectors: list[list[int]], target: list[int]) -> list[int] | None:
    """Decide whether target is an integer combination of the given vectors;
    returns the verified coefficients when it is, else None.
    """
    return IntegerLattice(vectors).coordinates(target)


# ---------------------------------------------------------------------------
# GF(2) elimination
# ---------------------------------------------------------------------------

def _gf2_rref(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2); returns (pivot rows, pivot cols)."""
    work = [bits for bits in rows if bits]
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    for c in range(cols):
        mask = 1 << c
        piv = None
        for i, bits in enumerate(work):
            if bits & mask:
                piv = i
                break
        if piv is None:
            continue
        row = work.pop(piv)
        pivot_rows = [b ^ row if b & mask else b for b in pivot_rows]
        work = [b for b in ((b ^ row if b & mask else b) for b in work) if b]
        pivot_rows.append(row)
        pivot_cols.append(c)
    return pivot_rows, pivot_cols


def gf2_rank(m: GF2Matrix) -> int:
    _, pivot_cols = _gf2_rref(m.row_bits, m.cols)
    return len(pivot_cols)


def gf2_nullspace(m: GF2Matrix) -> list[int]:
    """A basis of { x : M x = 0 } as column bitmasks, one per free column."""
    pivot_rows, pivot_cols = _gf2_rref(m.row_bits, m.cols)
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = 1 << f
        fmask = 1 << f
        for row, c in zip(pivot_rows, pivot_cols):
            if row & fmask:
                vec |= 1 << c
        basis.append(vec)
    return basis


def gf2_solve(m: GF2Matrix, b: int) -> int | None:
    """One solution of M x = b over GF(2) (free variables zero), or None.

    b is a bitmask over the rows.
    """
    if b >> m.rows:
        raise ValueError("right-hand side has more bits than the matrix has rows")
    aug_col = m.cols
    aug = [bits | (((b >> i) & 1) << aug_col) for i, bits in enumerate(m.row_bits)]
    pivot_rows, pivot_cols = _gf2_rref(aug, m.cols + 1)
    x = 0
    for row, c in zip(pivot_rows, pivot_cols):
        if c == aug_col:
            return None  # a row reduced to 0 = 1
        if (row >> aug_col) & 1:
            x |= 1 << c
    return x


def gf2_vector_from_poly(p: freealg.MultilinearPoly) -> int:
    """Mod-2 coefficient bitmask of a polynomial in canonical word order."""
    return freealg.reduce_mod2(p)
