import random

import pytest

from braidorbit.braid import (
    BraidWord,
    FreeTuple,
    NotPureWord,
    PureLetter,
    braid_word,
    check_braid_relations,
    free_inv,
    free_mul,
    hurwitz_act,
    parse_braid_word,
    parse_pure_word,
    phi_kl,
    pure_sigma_ij,
    pure_word_to_braid,
    sigma_ij,
)
from braidorbit.linalg import Mat


def gens(n):
    return FreeTuple.generators(n)


def seg(i, j):
    # the word a_i a_{i+1} ... a_j (1-based, inclusive); empty if j < i
    return tuple(range(i, j + 1))


def test_hurwitz_generator_action():
    t = hurwitz_act(braid_word(3, 1), gens(3))
    assert t.words == ((1, 2, -1), (1,), (3,))


def test_empty_word_is_identity():
    for n in (3, 5):
        assert hurwitz_act(BraidWord(n, ()), gens(n)) == gens(n)


def test_inverse_letter():
    w = braid_word(4, 2)
    t = hurwitz_act(w, gens(4))
    back = hurwitz_act(w.inverse(), t)
    assert back == gens(4)


def test_antimorphism_composition():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randrange(3, 7)
        w1 = BraidWord(n, tuple(rng.choice([-1, 1]) * rng.randrange(1, n) for _ in range(5)))
        w2 = BraidWord(n, tuple(rng.choice([-1, 1]) * rng.randrange(1, n) for _ in range(5)))
        t = gens(n)
        assert hurwitz_act(w1 * w2, t) == hurwitz_act(w1, hurwitz_act(w2, t))


def test_product_preserved():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randrange(3, 7)
        w = BraidWord(n, tuple(rng.choice([-1, 1]) * rng.randrange(1, n) for _ in range(8)))
        assert hurwitz_act(w, gens(n)).product() == gens(n).product()


def test_sigma_ij_trivial_cases():
    assert sigma_ij(4, 1, 2).letters == (1,)
    assert sigma_ij(4, 2, 3).letters == (2,)


def test_sigma_ij_action_matches_display():
    # sigma_{i,j}: a_i -> (a_i..a_{j-1}) a_j (..)^-1, a_j -> (a_{i+1}..a_{j-1})^-1 a_i (..)
    for n in range(3, 7):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                t = hurwitz_act(sigma_ij(n, i, j), gens(n))
                conj = seg(i, j - 1)
                mid = seg(i + 1, j - 1)
                expected = list(gens(n).words)
                expected[i - 1] = free_mul(conj, (j,), free_inv(conj))
                expected[j - 1] = free_mul(free_inv(mid), (i,), mid)
                assert t.words == tuple(expected), (n, i, j)


def test_pure_sigma_ij_action_matches_display():
    # sigma_{i,j}^2 display, checked symbolically for all 1 <= i < j <= n <= 6
    for n in range(3, 7):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                t = hurwitz_act(pure_sigma_ij(n, i, j), gens(n))
                big = seg(i, j)
                mid = seg(i + 1, j - 1)
                front = seg(i, j - 1)
                expected = list(gens(n).words)
                expected[i - 1] = free_mul(
                    big, free_inv(mid), (i,), mid, free_inv(big)
                )
                expected[j - 1] = free_mul(
                    free_inv(mid), front, (j,), free_inv(front), mid
                )
                assert t.words == tuple(expected), (n, i, j)
                assert pure_sigma_ij(n, i, j).is_pure()


def test_phi_kl_simple_cases():
    # Images of sigma_{i,j}^2 for the three index-range cases
    cases = [
        # (letters, k, ell, n, expected pure image (i,j))
        ([PureLetter(1, 2)], 4, 4, 5, (1, 2)),  # i < j < ell
        ([PureLetter(2, 3)], 4, 1, 5, (3, 4)),  # ell < i < j
        ([PureLetter(1, 3)], 4, 2, 5, (1, 4)),  # i < ell < j
    ]
    for letters, k, ell, n, (ei, ej) in cases:
        img = phi_kl(letters, k, ell, n)
        expected = pure_sigma_ij(n, ei, ej)
        assert hurwitz_act(img, gens(n)) == hurwitz_act(expected, gens(n))


def test_phi_kl_images_are_pure():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(5, 8)
        k = rng.randrange(4, n)
        ell = rng.randrange(1, k + 1)
        i = rng.randrange(1, k)
        j = rng.randrange(i + 1, k + 1)
        img = phi_kl([PureLetter(i, j, rng.choice([1, -1]))], k, ell, n)
        assert img.is_pure(), (n, k, ell, i, j)


def merge_word(word, k, ell, n):
    # substitution a_ell -> a_ell .. a_{ell+n-k}, a_i -> a_{i+n-k} for i > ell
    d = n - k
    out = []
    for s in word:
        g = abs(s)
        if g < ell:
            img = [g]
        elif g == ell:
            img = list(range(ell, ell + d + 1))
        else:
            img = [g + d]
        if s < 0:
            img = [-x for x in reversed(img)]
        out.extend(img)
    return free_mul(out)


def test_phi_kl_free_group_equivariance():
    # merge(Hur(beta)(a)) == Hur(phi(beta))(merge(a)) for every generator a
    for k, n in [(4, 5), (4, 6), (5, 6)]:
        for ell in range(1, k + 1):
            for i in range(1, k):
                for j in range(i + 1, k + 1):
                    beta = pure_sigma_ij(k, i, j)
                    img = phi_kl([PureLetter(i, j)], k, ell, n)
                    assert img.is_pure()
                    tk = hurwitz_act(beta, gens(k))
                    tn = hurwitz_act(img, gens(n))
                    for g in range(1, k + 1):
                        lhs = merge_word(tk.words[g - 1], k, ell, n)
                        rhs = free_mul(
                            *[
                                tn.words[s - 1] if s > 0 else free_inv(tn.words[-s - 1])
                                for s in merge_word((g,), k, ell, n)
                            ]
                        )
                        assert lhs == rhs, (k, n, ell, i, j, g)


def test_phi_kl_rejects_non_pure():
    with pytest.raises(NotPureWord):
        phi_kl(["s1"], 4, 1, 5)


def test_check_braid_relations():
    ident = Mat.identity(3)
    assert check_braid_relations([ident, ident, ident])
    a = Mat.from_rows([[1, 1], [0, 1]])
    b = Mat.from_rows([[1, 0], [-1, 1]])
    # Burau-like pair satisfies the braid relation
    assert check_braid_relations([a, b])
    assert not check_braid_relations([a, a @ a])


def test_parse_braid_word():
    w = parse_braid_word("s3 s3^-1 p(1,4) p(1,4)^-1", 5)
    assert hurwitz_act(w, gens(5)) == gens(5)
    assert parse_braid_word("s2^2", 4).letters == (2, 2)
    assert parse_pure_word("p(1,3) p(2,4)^-1") == [PureLetter(1, 3, 1), PureLetter(2, 4, -1)]
    word = pure_word_to_braid(5, parse_pure_word("p(1,3)^-2"))
    assert word.is_pure()
