import random

import pytest

from growthlab.errors import ConfigError, StructuralError
from growthlab.groups import (FreeAbelian, FreeGroup, MarkedGroup,
                              MatrixGroup, PermutationGroup, det_exact,
                              free_abelian_standard, free_group_standard,
                              heisenberg_group, mat_inverse_exact, mat_mul,
                              symmetric_group_adjacent)


def test_free_abelian_group_law():
    fam = FreeAbelian(3)
    rng = random.Random(101)
    for _ in range(200):
        a = tuple(rng.randint(-9, 9) for _ in range(3))
        b = tuple(rng.randint(-9, 9) for _ in range(3))
        assert fam.multiply(a, b) == tuple(x + y for x, y in zip(a, b))
        assert fam.multiply(a, fam.inverse(a)) == fam.identity()
        assert fam.canonicalize(list(a)) == a


def test_free_abelian_rejects_wrong_arity():
    fam = FreeAbelian(2)
    with pytest.raises(StructuralError):
        fam.canonicalize((1, 2, 3))
    with pytest.raises(StructuralError):
        fam.canonicalize((1, "x"))


def test_free_group_reduction():
    fam = FreeGroup(2)
    assert fam.canonicalize([1, -1]) == ()
    assert fam.canonicalize([1, 2, -2, -1]) == ()
    assert fam.canonicalize([1, 2, -1]) == (1, 2, -1)
    # random words always come out freely reduced and invert correctly
    rng = random.Random(7)
    letters = [1, -1, 2, -2]
    for _ in range(300):
        word = [rng.choice(letters) for _ in range(rng.randint(0, 12))]
        w = fam.canonicalize(word)
        for i in range(len(w) - 1):
            assert w[i] != -w[i + 1]
        assert fam.multiply(w, fam.inverse(w)) == ()
        assert fam.multiply(fam.inverse(w), w) == ()


def test_free_group_letter_range():
    fam = FreeGroup(2)
    with pytest.raises(StructuralError):
        fam.canonicalize([0])
    with pytest.raises(StructuralError):
        fam.canonicalize([3])


def test_free_group_associativity_sample():
    fam = FreeGroup(2)
    rng = random.Random(11)
    letters = [1, -1, 2, -2]
    for _ in range(100):
        words = [
            fam.canonicalize([rng.choice(letters)
                              for _ in range(rng.randint(0, 6))])
            for _ in range(3)
        ]
        a, b, c = words
        assert fam.multiply(fam.multiply(a, b), c) == \
            fam.multiply(a, fam.multiply(b, c))


def test_det_exact_small_cases():
    assert det_exact(((1, 2), (3, 4))) == -2
    assert det_exact(((2, 0, 0), (0, 3, 0), (0, 0, 4))) == 24
    assert det_exact(((1, 2), (2, 4))) == 0


def _random_unimodular(n, rng):
    # start from the identity and shear with random row operations,
    # which keeps the determinant at +1
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(15):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return tuple(tuple(r) for r in m)


def test_matrix_inverse_round_trip():
    rng = random.Random(23)
    fam = MatrixGroup(3)
    ident = fam.identity()
    for _ in range(50):
        a = _random_unimodular(3, rng)
        assert det_exact(a) == 1
        inv = mat_inverse_exact(a)
        assert mat_mul(a, inv) == ident
        assert mat_mul(inv, a) == ident


def test_matrix_inverse_rejects_non_unimodular():
    with pytest.raises(StructuralError):
        mat_inverse_exact(((2, 0), (0, 1)))
    with pytest.raises(StructuralError):
        mat_inverse_exact(((1, 1), (1, 1)))


def test_matrix_generator_determinant_check():
    fam = MatrixGroup(2)
    fam.validate_generator(((0, 1), (1, 0)))  # det -1 is fine
    with pytest.raises(StructuralError):
        fam.validate_generator(((2, 0), (0, 1)))


def test_permutation_group_law():
    fam = PermutationGroup(5)
    rng = random.Random(31)
    for _ in range(200):
        a = list(range(1, 6))
        b = list(range(1, 6))
        rng.shuffle(a)
        rng.shuffle(b)
        a, b = tuple(a), tuple(b)
        ab = fam.multiply(a, b)
        # multiply applies a first, then b
        for point in range(1, 6):
            assert ab[point - 1] == b[a[point - 1] - 1]
        assert fam.multiply(a, fam.inverse(a)) == fam.identity()


def test_permutation_validation():
    fam = PermutationGroup(3)
    with pytest.raises(StructuralError):
        fam.canonicalize((1, 1, 2))
    with pytest.raises(StructuralError):
        fam.canonicalize((1, 2))


def test_marked_group_needs_generators():
    with pytest.raises(ConfigError):
        MarkedGroup(FreeAbelian(2), ())


def test_marked_group_rejects_identity_generator():
    with pytest.raises(StructuralError):
        MarkedGroup(FreeAbelian(2), ((0, 0),))
    with pytest.raises(StructuralError):
        MarkedGroup(FreeGroup(1), ((1, -1),))


def test_effective_generating_set_symmetrizes():
    m = free_abelian_standard(2)
    eff = m.effective_generating_set()
    assert len(eff) == 4
    assert (-1, 0) in eff and (0, -1) in eff

    # listing a generator and its inverse twice changes nothing
    m2 = MarkedGroup(FreeAbelian(1), ((1,), (-1,)))
    assert len(m2.effective_generating_set()) == 2

    asym = MarkedGroup(FreeAbelian(1), ((1,),), symmetrize=False)
    assert asym.effective_generating_set() == [(1,)]


def test_stock_constructions():
    assert free_abelian_standard(3).generators == (
        (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert free_group_standard(2).generators == ((1,), (2,))

    h = heisenberg_group()
    assert det_exact(h.generators[0]) == 1
    assert len(h.effective_generating_set()) == 4

    s4 = symmetric_group_adjacent(4)
    assert len(s4.generators) == 3
    # adjacent transpositions are involutions, so symmetrizing is a no-op
    assert len(s4.effective_generating_set()) == 3


def test_describe_mentions_family_and_set():
    text = free_abelian_standard(2).describe()
    assert "free-abelian rank 2" in text
    assert "(1, 0)" in text
    assert "symmetrized" in text


def test_canonical_keys_distinguish_elements():
    fam = FreeGroup(2)
    words = [(), (1,), (-1,), (1, 2), (2, 1), (1, -2), (2,), (-2,)]
    keys = {fam.canonical_key(w) for w in words}
    assert len(keys) == len(words)

    perm = PermutationGroup(4)
    import itertools
    keys = {perm.canonical_key(p)
            for p in itertools.permutations(range(1, 5))}
    assert len(keys) == 24
