import random
from itertools import product
from math import comb

import pytest

from growthlab.cayley import (BallTable, enumerate_balls, trivial_ball_table,
                              word_distance, word_length)
from growthlab.errors import ArgumentError, BudgetExceededError
from growthlab.groups import (FreeAbelian, MarkedGroup, free_abelian_standard,
                              free_group_standard, heisenberg_group,
                              symmetric_group_adjacent)
from growthlab.series import closed_form_free_abelian, expand


def abelian_ball(n: int, k: int) -> int:
    # |B(k)| in Z^n with the standard symmetric basis:
    # sum over the number i of nonzero coordinates
    return sum(comb(n, i) * comb(k, i) * 2 ** i for i in range(n + 1))


def test_z_spheres_match_closed_form():
    table = enumerate_balls(free_abelian_standard(1), 30)
    assert list(table.sphere_sizes) == expand(closed_form_free_abelian(1), 30)
    assert list(table.ball_sizes) == [2 * k + 1 for k in range(31)]


def test_zn_balls_match_binomial_formula():
    for n in (1, 2, 3):
        table = enumerate_balls(free_abelian_standard(n), 12)
        for k in range(13):
            assert table.ball_sizes[k] == abelian_ball(n, k)


def test_free_group_spheres():
    table = enumerate_balls(free_group_standard(2), 8)
    assert table.sphere_sizes[0] == 1
    for k in range(1, 9):
        assert table.sphere_sizes[k] == 4 * 3 ** (k - 1)


def test_heisenberg_sphere_prefix():
    # exact values computed once and pinned; the first few can be checked
    # by hand from the two unipotent generators and their inverses
    table = enumerate_balls(heisenberg_group(), 8)
    assert list(table.sphere_sizes) == [1, 4, 12, 36, 82, 164, 294, 476, 724]


def test_finite_group_terminates():
    table = enumerate_balls(symmetric_group_adjacent(3), 10)
    assert list(table.sphere_sizes[:5]) == [1, 2, 2, 1, 0]
    assert table.ball_sizes[-1] == 6
    s4 = enumerate_balls(symmetric_group_adjacent(4), 10)
    assert s4.ball_sizes[-1] == 24
    assert max(k for k, s in enumerate(s4.sphere_sizes) if s) == 6


def brute_force_ball(m: MarkedGroup, k: int) -> int:
    """Count distinct products of at most k effective generators without
    any visited-set machinery; oracle for small k only."""
    fam = m.family
    gens = m.effective_generating_set()
    seen = {fam.canonical_key(fam.identity())}
    for length in range(1, k + 1):
        for combo in product(gens, repeat=length):
            g = fam.identity()
            for s in combo:
                g = fam.multiply(g, s)
            seen.add(fam.canonical_key(g))
    return len(seen)


def test_bfs_against_brute_force_random_sets():
    rng = random.Random(777)
    fam = FreeAbelian(2)
    for _ in range(8):
        gens = []
        while len(gens) < 2:
            v = (rng.randint(-2, 2), rng.randint(-2, 2))
            if v != (0, 0) and v not in gens:
                gens.append(v)
        m = MarkedGroup(fam, tuple(gens))
        table = enumerate_balls(m, 4)
        for k in range(5):
            assert table.ball_sizes[k] == brute_force_ball(m, k)


def test_asymmetric_generating_set():
    # Z marked with {+1} only: every sphere is a single element
    m = MarkedGroup(FreeAbelian(1), ((1,),), symmetrize=False)
    table = enumerate_balls(m, 6)
    assert list(table.sphere_sizes) == [1] * 7


def test_word_length_basics():
    m = free_abelian_standard(2)
    assert word_length(m, (0, 0), 5) == 0
    assert word_length(m, (1, 0), 5) == 1
    assert word_length(m, (3, -4), 10) == 7
    assert word_length(m, (3, -4), 5) is None


def test_word_length_finite_group_exhausts():
    m = symmetric_group_adjacent(3)
    # the longest element needs all three adjacent swaps
    assert word_length(m, (3, 2, 1), 10) == 3
    # kmax larger than the diameter still terminates once the frontier dies
    assert word_length(m, (3, 2, 1), 50) == 3


def test_word_distance_symmetry():
    m = free_abelian_standard(2)
    rng = random.Random(55)
    for _ in range(30):
        g = (rng.randint(-3, 3), rng.randint(-3, 3))
        h = (rng.randint(-3, 3), rng.randint(-3, 3))
        d1 = word_distance(m, g, h, 15)
        d2 = word_distance(m, h, g, 15)
        assert d1 == d2
        manhattan = abs(g[0] - h[0]) + abs(g[1] - h[1])
        assert d1 == manhattan


def test_budget_exceeded_carries_partial_table():
    with pytest.raises(BudgetExceededError) as err:
        enumerate_balls(free_group_standard(2), 12, element_budget=500)
    exc = err.value
    assert exc.last_radius >= 1
    assert exc.partial is not None
    assert exc.partial.radius_max == exc.last_radius
    # the partial table is still internally consistent
    assert exc.partial.ball_sizes[-1] <= 500
    full = enumerate_balls(free_group_standard(2), exc.last_radius)
    assert exc.partial.sphere_sizes == full.sphere_sizes


def test_trivial_ball_table():
    table = trivial_ball_table(5)
    assert list(table.sphere_sizes) == [1, 0, 0, 0, 0, 0]
    assert list(table.ball_sizes) == [1] * 6


def test_ball_table_validation():
    with pytest.raises(ArgumentError):
        BallTable(2, (1, 2, 2), (1, 3, 4))   # beta not partial sums
    with pytest.raises(ArgumentError):
        BallTable(1, (2, 2), (2, 4))         # sigma(0) must be 1
    with pytest.raises(ArgumentError):
        BallTable(-1, (), ())


def test_ball_table_serialization():
    table = enumerate_balls(free_abelian_standard(1), 3)
    lines = table.to_csv_lines()
    assert lines[0] == "k,sigma,beta"
    assert lines[1] == "0,1,1"
    assert lines[-1] == "3,2,7"
    d = table.to_json_dict()
    assert d["sphere_sizes"] == ["1", "2", "2", "2"]
    assert d["radius_max"] == "3"


def test_enumerate_preconditions():
    m = free_abelian_standard(1)
    with pytest.raises(ArgumentError):
        enumerate_balls(m, -1)
    with pytest.raises(ArgumentError):
        enumerate_balls(m, 3, element_budget=0)
