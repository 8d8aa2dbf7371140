import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobiset.freealg import (
    MultilinearPoly,
    bracket_identity_latex,
    bracket_identity_text,
    bracket_image,
    bracket_of_two_blocks,
    canonical_words,
    expand_bracket_recursive,
    expand_bracket_shuffle,
    kernel_probe,
    monomial,
    poly_from_json_obj,
    poly_to_json_obj,
    poly_to_text,
    reduce_mod2,
    sum_of_set,
    word_index,
    zero,
)
from jacobiset.perm import (
    block_swap,
    bracket_expansion_set,
    compose,
    first_two_swap,
    jacobi_family,
    left_translate,
    perm_set,
)


def p1(*values):
    return tuple(v - 1 for v in values)


def poly(degree, terms):
    return MultilinearPoly(degree, {tuple(v - 1 for v in w): c for w, c in terms.items()})


class TestMonomials:
    def test_single_terms(self):
        assert monomial(p1(1, 2)) == poly(2, {(1, 2): 1})
        assert monomial(p1(2, 1)) == poly(2, {(2, 1): 1})
        assert monomial(p1(3, 1, 2)) == poly(3, {(3, 1, 2): 1})


class TestSumOfSet:
    def test_empty_is_zero(self):
        assert sum_of_set(perm_set([], degree=3)).is_zero()

    def test_pair_family(self):
        assert sum_of_set(jacobi_family(1, 1, 2)) == poly(2, {(1, 2): 1, (2, 1): 1})

    def test_rotation_family(self):
        expected = poly(3, {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1})
        assert sum_of_set(jacobi_family(1, 2, 3)) == expected


class TestRecursiveExpansion:
    def test_degree_one(self):
        assert expand_bracket_recursive(p1(1)) == poly(1, {(1,): 1})

    def test_degree_two(self):
        assert expand_bracket_recursive(p1(1, 2)) == poly(2, {(1, 2): 1, (2, 1): -1})

    def test_degree_three(self):
        # hand expansion of the nested commutator of x1, x2, x3
        expected = poly(3, {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1})
        assert expand_bracket_recursive(p1(1, 2, 3)) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_term_count_law(self, n):
        for sigma in itertools.islice(itertools.permutations(range(n)), 24):
            p = expand_bracket_recursive(sigma)
            assert p.term_count() == 2 ** (n - 1)
            assert all(c in (1, -1) for _, c in p.terms())
            assert p.coefficient(sigma) == 1

    @given(st.integers(2, 6).flatmap(lambda n: st.permutations(range(n))))
    def test_antisymmetry_in_first_two(self, word):
        sigma = tuple(word)
        swapped = compose(sigma, first_two_swap(len(sigma)))
        assert expand_bracket_recursive(swapped) == -expand_bracket_recursive(sigma)


class TestShuffleExpansion:
    def test_degree_two(self):
        assert expand_bracket_shuffle(p1(1, 2)) == poly(2, {(1, 2): 1, (2, 1): -1})

    def test_degree_three(self):
        expected = poly(3, {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1})
        assert expand_bracket_shuffle(p1(1, 2, 3)) == expected

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_recursive(self, n):
        for sigma in itertools.permutations(range(n)):
            assert expand_bracket_shuffle(sigma) == expand_bracket_recursive(sigma)


class TestBracketImage:
    def test_linearity_on_zero(self):
        assert bracket_image(zero(4)).is_zero()

    def test_pair_family_in_kernel(self):
        assert bracket_image(sum_of_set(jacobi_family(1, 1, 2))).is_zero()

    def test_single_word(self):
        expected = poly(3, {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1})
        assert bracket_image(monomial(p1(1, 2, 3))) == expected


class TestTwoBlockBracket:
    def test_one_one(self):
        assert bracket_of_two_blocks(1, 1) == poly(2, {(1, 2): 1, (2, 1): -1})

    def test_left_normed_case(self):
        # a trailing block of size 1 makes the bracket left-normed
        assert bracket_of_two_blocks(2, 1) == bracket_image(monomial(p1(1, 2, 3)))

    @pytest.mark.parametrize("k,l", [(k, l) for k in range(1, 6) for l in range(1, 7 - k)])
    def test_equals_expansion_set_image(self, k, l):
        lhs = bracket_of_two_blocks(k, l)
        assert lhs == bracket_image(sum_of_set(bracket_expansion_set(k, l)))
        # the swapped half carries the reversed outer bracket
        swapped = left_translate(block_swap(k, l), bracket_expansion_set(l, k))
        assert bracket_image(sum_of_set(swapped)) == -lhs


class TestKernelProbe:
    def test_smallest(self):
        assert kernel_probe(2, 2) == poly(2, {(1, 2): 1, (2, 1): 1})

    def test_degree_three(self):
        assert kernel_probe(3, 3) == poly(3, {(1, 2, 3): 1, (3, 1, 2): 1, (3, 2, 1): -1})

    def test_range_validation(self):
        with pytest.raises(ValueError):
            kernel_probe(1, 3)
        with pytest.raises(ValueError):
            kernel_probe(4, 3)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_in_kernel_with_term_count(self, n):
        for j in range(2, n + 1):
            probe = kernel_probe(j, n)
            assert probe.term_count() == 1 + 2 ** (j - 2)
            assert bracket_image(probe).is_zero()


class TestArithmetic:
    def test_add_negate_cancel(self):
        p = expand_bracket_recursive(p1(2, 1, 3))
        assert (p + (-p)).is_zero()
        assert p - p == zero(3)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            zero(2) + zero(3)

    def test_scale(self):
        p = monomial(p1(1, 2))
        assert p.scale(3).coefficient(p1(1, 2)) == 3
        assert p.scale(0).is_zero()

    def test_no_zero_coefficients_stored(self):
        p = poly(2, {(1, 2): 1}) + poly(2, {(1, 2): -1, (2, 1): 2})
        assert p.term_count() == 1

    def test_reduce_mod2(self):
        p = poly(2, {(1, 2): 1, (2, 1): 2})
        idx = word_index(2)
        assert reduce_mod2(p) == 1 << idx[p1(1, 2)]

    def test_reduce_mod2_indicator(self):
        fam = jacobi_family(1, 2, 3)
        bits = reduce_mod2(sum_of_set(fam))
        idx = word_index(3)
        expected = 0
        for p in fam:
            expected |= 1 << idx[p]
        assert bits == expected


class TestSerialization:
    def test_json_round_trip(self):
        p = bracket_of_two_blocks(2, 2)
        assert poly_from_json_obj(json.loads(json.dumps(poly_to_json_obj(p)))) == p

    def test_json_canonical_order(self):
        obj = poly_to_json_obj(expand_bracket_recursive(p1(1, 2, 3)))
        perms = [tuple(e["permutation"]) for e in obj["terms"]]
        assert perms == sorted(perms)

    def test_text_forms(self):
        assert poly_to_text(zero(3)) == "0"
        assert poly_to_text(expand_bracket_recursive(p1(1, 2))) == "x1.x2 - x2.x1"
        assert poly_to_text(poly(2, {(1, 2): -2})) == "-2*x1.x2"

    def test_identity_text(self):
        assert bracket_identity_text(jacobi_family(1, 1, 2)) == "[x1,x2]+[x2,x1] = 0"

    def test_identity_latex(self):
        out = bracket_identity_latex(jacobi_family(1, 1, 2))
        assert out == "\\[ [x_1,x_2]+[x_2,x_1] = 0 \\]"

    def test_canonical_words_are_sorted(self):
        for n in range(1, 6):
            words = canonical_words(n)
            assert list(words) == sorted(words)
