import itertools
import random
from functools import lru_cache

import pytest

from qzeta import sampling
from qzeta.lyndon import (
    WordSeries,
    chained_lyndon_words,
    identity_minus_at,
    is_lyndon,
    lyndon_factorize,
    lyndon_words,
    matrix_lyndon_product,
    matrix_lyndon_product_unskipped,
    necklace_count,
    verify_word_identity,
    word_identity_mismatch,
)
from qzeta.quaternion import I, J, K, Quaternion
from qzeta.series import GAUSSIAN, QUATERNION, RATIONAL
from qzeta.smatrix import SeriesMatrix


def brute_is_lyndon(w):
    w = tuple(w)
    return len(w) > 0 and all(w < w[k:] + w[:k] for k in range(1, len(w)))


def brute_lyndon_words(N, L):
    return sorted(
        w for r in range(1, L + 1) for w in itertools.product(range(1, N + 1), repeat=r) if brute_is_lyndon(w)
    )


def exhaustive_factorizations(w):
    """Every split of ``w`` into Lyndon words with nonincreasing factors."""

    @lru_cache(maxsize=None)
    def rest(start, bound):
        if start == len(w):
            return [()]
        out = []
        for end in range(start + 1, len(w) + 1):
            piece = w[start:end]
            if brute_is_lyndon(piece) and (bound is None or piece <= bound):
                out.extend((piece,) + tail for tail in rest(end, piece))
        return out

    return rest(0, None)


def test_small_list():
    assert lyndon_words(2, 3) == [(1,), (1, 1, 2), (1, 2), (1, 2, 2), (2,)]
    assert len(lyndon_words(2, 5)) == 14


@pytest.mark.parametrize("N,L", [(1, 5), (2, 7), (3, 5), (4, 4)])
def test_generation_matches_brute_force(N, L):
    assert lyndon_words(N, L) == brute_lyndon_words(N, L)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_counts_match_witt_formula(N):
    words = lyndon_words(N, 6)
    for r in range(1, 7):
        assert sum(1 for w in words if len(w) == r) == necklace_count(N, r)


def test_is_lyndon_agrees_with_rotation_definition():
    for r in range(1, 8):
        for w in itertools.product((1, 2, 3), repeat=r):
            assert is_lyndon(w) == brute_is_lyndon(w), w
    assert not is_lyndon(())


def test_factorization_examples():
    assert lyndon_factorize((2, 1)) == [(2,), (1,)]
    assert lyndon_factorize((1, 2, 1, 2)) == [(1, 2), (1, 2)]
    assert lyndon_factorize((1, 1, 2, 1, 2)) == [(1, 1, 2, 1, 2)]
    assert lyndon_factorize((1, 2, 1, 1, 2)) == [(1, 2), (1, 1, 2)]
    with pytest.raises(ValueError):
        lyndon_factorize(())


def test_factorization_is_the_unique_exhaustive_one():
    rng = random.Random(5)
    words = [w for r in range(1, 8) for w in itertools.product((1, 2, 3), repeat=r)]
    words += [tuple(rng.randint(1, 3) for _ in range(rng.randint(8, 10))) for _ in range(300)]
    for w in words:
        found = exhaustive_factorizations(w)
        assert found == [tuple(lyndon_factorize(w))], w


@pytest.mark.parametrize("N,T", [(1, 5), (2, 5), (3, 4), (3, 5)])
def test_word_series_identities(N, T):
    assert word_identity_mismatch(N, T) is None
    assert verify_word_identity(N, T)


def test_word_series_respects_noncommutativity():
    T = 3
    a = WordSeries.term((1,), 1, 1, T)
    b = WordSeries.term((2,), 1, 1, T)
    assert a * b != b * a
    assert (a * b).terms == {(2, (1, 2)): 1}
    # degree and word length are tracked independently
    assert WordSeries.term((1, 2), 1, 1, T).terms == {(1, (1, 2)): 1}


def test_chained_words_chain():
    for word in chained_lyndon_words(2, 4):
        assert all(word[k][1] == word[k + 1][0] for k in range(len(word) - 1))
        assert brute_is_lyndon(word)


def test_rational_matrix_product():
    A = [[1, 1], [1, 0]]
    assert matrix_lyndon_product(A, 5) == identity_minus_at(A, 5)


def test_quaternion_matrix_product_in_both_forms():
    A = [[I, J], [K, Quaternion.one()]]
    want = identity_minus_at(A, 4)
    assert matrix_lyndon_product(A, 4) == want
    assert matrix_lyndon_product_unskipped(A, 4) == want


def test_factor_order_matters():
    A = [[I, J], [K, Quaternion.one()]]
    P = matrix_lyndon_product(A, 3)
    # reversing the product order breaks the identity for noncommuting entries
    T, n = 3, 2
    Id = SeriesMatrix.identity(n, T, QUATERNION)
    rev = Id
    for word in reversed(chained_lyndon_words(n, T)):
        c = A[word[0][0]][word[0][1]]
        for i, j in word[1:]:
            c = c * A[i][j]
        E = [[c if (r, s) == (word[0][0], word[-1][1]) else Quaternion.zero() for s in range(n)] for r in range(n)]
        rev = rev @ (Id - SeriesMatrix.from_constants(E, T, QUATERNION).shift(len(word)))
    assert P == identity_minus_at(A, T)
    assert rev != P


@pytest.mark.parametrize("ring", [RATIONAL, GAUSSIAN, QUATERNION])
def test_random_matrix_products(ring):
    rng = random.Random(f"lyndon:{ring}")
    for trial in range(12):
        n = 1 + trial % 3
        T = 2 + trial % 4
        A = sampling.constant_matrix(rng, n, ring)
        assert matrix_lyndon_product(A, T) == identity_minus_at(A, T)
