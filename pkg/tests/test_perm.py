import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobiset.perm import (
    PermSet,
    block_swap,
    bracket_expansion_set,
    compose,
    embed,
    embed_perm,
    enumerate_shuffles,
    enumerate_shuffles_first,
    first_two_swap,
    format_cycles,
    format_one_line,
    format_perm_set,
    identity,
    inverse,
    jacobi_family,
    left_translate,
    make_shuffle,
    parse_perm,
    parse_perm_set,
    perm_from_cycles,
    perm_from_shuffle,
    perm_set,
    right_swap,
)


def p1(*values):
    """1-based one-line word to internal tuple."""
    return tuple(v - 1 for v in values)


def ps1(rows, degree=None):
    return perm_set([tuple(v - 1 for v in row) for row in rows], degree=degree)


@st.composite
def same_degree_perms(draw, count, max_degree=10):
    n = draw(st.integers(1, max_degree))
    return [tuple(draw(st.permutations(range(n)))) for _ in range(count)]


class TestCompose:
    def test_identity_neutral(self):
        assert compose(p1(2, 1, 3), identity(3)) == p1(2, 1, 3)
        assert compose(identity(3), p1(2, 1, 3)) == p1(2, 1, 3)

    def test_right_factor_first(self):
        # hand-applied: result(i) = sigma(tau(i))
        assert compose(p1(1, 3, 2), p1(2, 1, 3)) == p1(3, 1, 2)
        assert compose(p1(3, 4, 1, 2), p1(2, 1, 4, 3)) == p1(4, 3, 2, 1)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(p1(1, 2), p1(1, 2, 3))

    @given(same_degree_perms(3))
    def test_associative(self, perms):
        a, b, c = perms
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(same_degree_perms(1))
    def test_inverse(self, perms):
        (a,) = perms
        assert compose(a, inverse(a)) == identity(len(a))
        assert compose(inverse(a), a) == identity(len(a))


class TestShuffles:
    def test_one_one(self):
        shs = enumerate_shuffles(1, 1)
        assert [(s.alpha, s.beta) for s in shs] == [((0,), (1,)), ((1,), (0,))]

    def test_two_two_count(self):
        assert len(enumerate_shuffles(2, 2)) == 6

    def test_three_zero(self):
        shs = enumerate_shuffles(3, 0)
        assert len(shs) == 1 and shs[0].alpha == (0, 1, 2) and shs[0].beta == ()

    def test_first_pinned_examples(self):
        assert len(enumerate_shuffles_first(1, 0)) == 1
        assert [(s.alpha, s.beta) for s in enumerate_shuffles_first(2, 1)] == [
            ((0, 1), (2,)),
            ((0, 2), (1,)),
        ]
        assert [(s.alpha, s.beta) for s in enumerate_shuffles_first(1, 2)] == [((0,), (1, 2))]

    def test_first_pinned_rejects_empty_alpha(self):
        with pytest.raises(ValueError):
            enumerate_shuffles_first(0, 2)

    @pytest.mark.parametrize("s", range(9))
    @pytest.mark.parametrize("t", range(9))
    def test_counts(self, s, t):
        assert len(enumerate_shuffles(s, t)) == math.comb(s + t, t)
        if s >= 1:
            assert len(enumerate_shuffles_first(s, t)) == math.comb(s + t - 1, t)

    def test_alpha_lex_order(self):
        alphas = [sh.alpha for sh in enumerate_shuffles(2, 3)]
        assert alphas == sorted(alphas)

    def test_make_shuffle_validation(self):
        with pytest.raises(ValueError):
            make_shuffle(2, 1, (0, 2), (2,))  # overlapping images
        with pytest.raises(ValueError):
            make_shuffle(2, 0, (1, 0), ())  # not increasing


class TestShufflePerm:
    def test_trivial_shuffle_gives_identity(self):
        (sh,) = enumerate_shuffles_first(1, 0)
        assert perm_from_shuffle(sh, 2, 1, 0) == identity(3)

    def test_signed_example(self):
        sh = make_shuffle(1, 1, (0,), (1,))
        assert perm_from_shuffle(sh, 1, 2, 1) == p1(3, 1, 2)
        assert perm_from_shuffle(sh, 2, 2, 1) == p1(2, 1, 4, 3)

    def test_shape_validation(self):
        sh = make_shuffle(1, 1, (0,), (1,))
        with pytest.raises(ValueError):
            perm_from_shuffle(sh, 2, 3, 0)  # needs a (3, 0) shuffle
        bad = make_shuffle(1, 1, (1,), (0,))
        with pytest.raises(ValueError):
            perm_from_shuffle(bad, 1, 2, 1)  # alpha not pinned to front


class TestExpansionSets:
    def test_small_sets(self):
        assert bracket_expansion_set(2, 1).sorted_members() == [identity(3)]
        assert bracket_expansion_set(1, 2).sorted_members() == [p1(1, 2, 3), p1(3, 1, 2)]
        assert bracket_expansion_set(2, 2).sorted_members() == [p1(1, 2, 3, 4), p1(2, 1, 4, 3)]

    @pytest.mark.parametrize("k", range(1, 7))
    @pytest.mark.parametrize("l", range(1, 7))
    def test_sizes_and_disjointness(self, k, l):
        ckl = bracket_expansion_set(k, l)
        assert len(ckl) == 2 ** (l - 1)
        swapped = left_translate(block_swap(k, l), bracket_expansion_set(l, k))
        assert ckl.isdisjoint(swapped)
        family = jacobi_family(k, l, k + l)
        assert len(family) == 2 ** (k - 1) + 2 ** (l - 1)

    def test_block_swap_values(self):
        assert block_swap(2, 2) == p1(3, 4, 1, 2)
        assert block_swap(1, 2) == p1(2, 3, 1)
        assert block_swap(1, 1) == p1(2, 1)


class TestFamilies:
    def test_goldens(self):
        assert jacobi_family(1, 1, 2) == ps1([[1, 2], [2, 1]])
        assert jacobi_family(1, 2, 3) == ps1([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
        assert jacobi_family(2, 2, 4) == ps1(
            [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]]
        )

    def test_degree_guard(self):
        with pytest.raises(ValueError):
            jacobi_family(2, 2, 3)

    def test_embed(self):
        assert embed(ps1([[2, 1]]), 4) == ps1([[2, 1, 3, 4]])
        fam = jacobi_family(1, 2, 3)
        assert embed(fam, 3) == fam
        assert embed(fam, 4) == ps1([[1, 2, 3, 4], [2, 3, 1, 4], [3, 1, 2, 4]])

    def test_translations(self):
        fam = jacobi_family(2, 1, 3)
        assert left_translate(identity(3), fam) == fam
        # this 3-cycle permutes the three members among themselves
        assert left_translate(p1(2, 3, 1), fam) == fam
        assert right_swap(ps1([[1, 2, 3]])) == ps1([[2, 1, 3]])

    @given(same_degree_perms(2, max_degree=8), st.integers(0, 3))
    def test_embed_commutes_with_compose(self, perms, extra):
        a, b = perms
        m = len(a) + extra
        assert embed_perm(compose(a, b), m) == compose(embed_perm(a, m), embed_perm(b, m))

    @given(same_degree_perms(2, max_degree=8), st.integers(0, 3))
    def test_embed_injective(self, perms, extra):
        a, b = perms
        m = len(a) + extra
        assert (embed_perm(a, m) == embed_perm(b, m)) == (a == b)


class TestPermSetType:
    def test_rejects_mixed_degrees(self):
        with pytest.raises(ValueError):
            PermSet(3, frozenset({p1(1, 2), p1(1, 2, 3)}))

    def test_empty_needs_degree(self):
        with pytest.raises(ValueError):
            perm_set([])
        assert len(perm_set([], degree=4)) == 0

    def test_canonical_iteration(self):
        ps = ps1([[3, 1, 2], [1, 2, 3], [2, 3, 1]])
        assert list(ps) == [p1(1, 2, 3), p1(2, 3, 1), p1(3, 1, 2)]


class TestTextFormats:
    def test_one_line_round_trip(self):
        assert parse_perm("3 1 2") == p1(3, 1, 2)
        assert format_one_line(p1(3, 1, 2)) == "3 1 2"

    def test_cycle_convention(self):
        # each listed point maps to its predecessor: (123) is one-line 3 1 2
        assert perm_from_cycles("(123)", 3) == p1(3, 1, 2)
        assert perm_from_cycles("(1 2 3)", 3) == p1(3, 1, 2)
        assert perm_from_cycles("(13)", 3) == p1(3, 2, 1)
        assert perm_from_cycles("()", 3) == identity(3)
        assert perm_from_cycles("(12)(34)", 4) == p1(2, 1, 4, 3)

    def test_cycle_round_trip(self):
        for word in [p1(3, 1, 2), p1(2, 1, 4, 3), identity(2), p1(2, 3, 4, 1)]:
            assert perm_from_cycles(format_cycles(word), len(word)) == word

    def test_format_cycles_identity(self):
        assert format_cycles(identity(3)) == "()"

    def test_set_from_cycle_line(self):
        ps = parse_perm_set("() (123) (13)")
        assert ps == ps1([[1, 2, 3], [3, 1, 2], [3, 2, 1]])

    def test_set_from_lines(self):
        ps = parse_perm_set("1 2 3\n2 3 1\n3 1 2\n")
        assert ps == jacobi_family(1, 2, 3)

    def test_set_from_json_array(self):
        ps = parse_perm_set("[[1,2,3],[2,3,1],[3,1,2]]")
        assert ps == jacobi_family(1, 2, 3)

    def test_set_round_trip(self):
        fam = jacobi_family(2, 2, 4)
        assert parse_perm_set(format_perm_set(fam)) == fam
        assert parse_perm_set(format_perm_set(fam, style="bracket")) == fam

    def test_empty_input(self):
        assert len(parse_perm_set("")) == 0

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse_perm("1 1 2")
        with pytest.raises(ValueError):
            parse_perm_set("1 2 3\n1 2\n")
        with pytest.raises(ValueError):
            perm_from_cycles("(12", 3)
