import math
import random
from fractions import Fraction
from math import comb

import pytest

from growthlab.ehrhart import (LatticePolytope, count_dilate,
                               cross_polytope, cross_polytope_series,
                               ehrhart_sequence, legendre, root_polytope,
                               root_polytope_series)
from growthlab.errors import ArgumentError, StructuralError


def l1_ball(n, k):
    # lattice points with |x|_1 <= k, which is exactly the k-th dilate
    # of the cross-polytope
    return sum(comb(n, i) * comb(k, i) * 2 ** i for i in range(min(n, k) + 1))


def test_segment():
    P = LatticePolytope.make(1, [(0,), (1,)])
    assert ehrhart_sequence(P, 5) == [1, 2, 3, 4, 5, 6]


def test_point_polytope():
    P = LatticePolytope.make(2, [(3, 4)])
    assert ehrhart_sequence(P, 4) == [1, 1, 1, 1, 1]
    assert P.affine_dim() == 0


def test_unit_square():
    P = LatticePolytope.make(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert ehrhart_sequence(P, 6) == [(k + 1) ** 2 for k in range(7)]
    assert P.affine_dim() == 2
    assert P.rank == 2


def test_standard_simplex():
    P = LatticePolytope.make(2, [(0, 0), (1, 0), (0, 1)])
    assert ehrhart_sequence(P, 8) == [comb(k + 2, 2) for k in range(9)]


def test_cross_polytope_counts():
    for n in (1, 2, 3):
        P = cross_polytope(n)
        kmax = 6 if n < 3 else 4
        assert ehrhart_sequence(P, kmax) == [l1_ball(n, k)
                                             for k in range(kmax + 1)]


def test_cross_polytope_series_matches_counts():
    for n in (1, 2, 3):
        f = cross_polytope_series(n)
        assert f.expand(8) == [l1_ball(n, k) for k in range(9)]


def test_root_polytope_hexagon():
    # in root coordinates the n=2 polytope is the hexagon
    # |a| <= 1, |b| <= 1, |a - b| <= 1
    P = root_polytope(2)
    assert P.rank == 2
    assert P.ambient_dim == 3
    assert P.affine_dim() == 2
    assert len(P.vertices) == 6

    def hexagon(k):
        return sum(1 for a in range(-k, k + 1) for b in range(-k, k + 1)
                   if abs(a - b) <= k)

    assert ehrhart_sequence(P, 4) == [hexagon(k) for k in range(5)]
    assert ehrhart_sequence(P, 4) == [1, 7, 19, 37, 61]


def test_root_polytope_series():
    f2 = root_polytope_series(2)
    assert list(f2.numerator) == [1, 4, 1]
    assert list(f2.denominator) == [1, -3, 3, -1]
    assert f2.expand(4) == [1, 7, 19, 37, 61]
    f3 = root_polytope_series(3)
    assert list(f3.numerator) == [1, 9, 9, 1]
    assert f3.expand(3) == ehrhart_sequence(root_polytope(3), 3)


def test_root_series_denominator_degree():
    for n in range(1, 6):
        f = root_polytope_series(n)
        assert len(f.denominator) == n + 2  # (1 - z)^(n+1)
        assert sum(f.numerator) == math.factorial(2 * n) // (
            math.factorial(n) ** 2)  # volume numerator C(2n, n)


def test_legendre_polynomials():
    assert legendre(0).coefficients == (Fraction(1),)
    assert legendre(1).coefficients == (Fraction(0), Fraction(1))
    assert legendre(2).coefficients == (Fraction(-1, 2), Fraction(0),
                                        Fraction(3, 2))
    assert legendre(3).coefficients == (Fraction(0), Fraction(-3, 2),
                                        Fraction(0), Fraction(5, 2))
    assert legendre(4).evaluate(0) == Fraction(3, 8)
    for n in range(9):
        assert legendre(n).evaluate(1) == 1
        assert legendre(n).evaluate(-1) == (-1) ** n
    with pytest.raises(ArgumentError):
        legendre(-1)


def test_pick_theorem_random_triangles():
    # Ehrhart of a lattice triangle is A k^2 + (B/2) k + 1 with A the
    # area and B the number of boundary lattice points, so the counted
    # sequence must match the Pick data edge for edge
    rng = random.Random(77)
    done = 0
    while done < 12:
        pts = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(3)]
        (x0, y0), (x1, y1), (x2, y2) = pts
        det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        if det == 0:
            continue
        done += 1
        area = Fraction(abs(det), 2)
        boundary = sum(math.gcd(abs(ax - bx), abs(ay - by))
                       for (ax, ay), (bx, by) in zip(pts, pts[1:] + pts[:1]))
        P = LatticePolytope.make(2, pts)
        for k in range(4):
            expected = area * k * k + Fraction(boundary, 2) * k + 1
            assert count_dilate(P, k) == expected


def test_duplicate_vertices_collapse():
    P = LatticePolytope.make(1, [(0,), (1,), (0,)])
    assert len(P.vertices) == 2


def test_sublattice_coordinates():
    # the even sublattice of Z: vertices must land on it
    P = LatticePolytope.make(1, [(-2,), (4,)], basis=[(2,)])
    assert P.vertex_coords == ((-1,), (2,))
    # dilates count points of the sublattice, i.e. in lattice coords
    assert ehrhart_sequence(P, 3) == [1, 4, 7, 10]


def test_validation_errors():
    with pytest.raises(ArgumentError):
        LatticePolytope.make(0, [()])
    with pytest.raises(ArgumentError):
        LatticePolytope.make(2, [])
    with pytest.raises(StructuralError):
        LatticePolytope.make(2, [(1, 0, 0)])  # wrong vertex length
    with pytest.raises(StructuralError):
        LatticePolytope.make(2, [(1, 0)], basis=[(1, 0, 0)])
    with pytest.raises(StructuralError):
        LatticePolytope.make(2, [(1, 0)], basis=[(1, 0), (2, 0)])
    with pytest.raises(StructuralError):
        # outside the span of the basis
        LatticePolytope.make(2, [(1, 1)], basis=[(1, 0)])
    with pytest.raises(StructuralError):
        # in the span but not on the lattice
        LatticePolytope.make(1, [(1,)], basis=[(2,)])


def test_count_preconditions():
    P = cross_polytope(1)
    assert count_dilate(P, 0) == 1
    with pytest.raises(ArgumentError):
        count_dilate(P, -1)
    with pytest.raises(ArgumentError):
        ehrhart_sequence(P, -1)
    with pytest.raises(ArgumentError):
        cross_polytope(0)
    with pytest.raises(ArgumentError):
        root_polytope(0)
    with pytest.raises(ArgumentError):
        cross_polytope_series(0)
    with pytest.raises(ArgumentError):
        root_polytope_series(0)
