"""Exact breadth-first enumeration of word-metric spheres and balls.

For a marked group (G, S) the word length of g is the least k with
g in (S u S^-1)^k.  ``enumerate_balls`` expands spheres frontier by
frontier, keeping a visited set of canonical byte keys, and returns the
exact sphere sizes sigma(k) and ball sizes beta(k) up to a radius.
The enumeration is deterministic: the resulting sizes do not depend on
any iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError, BudgetExceededError
from .groups import MarkedGroup

DEFAULT_ELEMENT_BUDGET = 10_000_000


@dataclass(frozen=True)
class BallTable:
    """Sphere and ball sizes of a marked group up to radius_max."""

    radius_max: int
    sphere_sizes: tuple
    ball_sizes: tuple
    group_description: str = ""

    def __post_init__(self):
        n = self.radius_max
        if n < 0:
            raise ArgumentError("radius_max must be nonnegative")
        if len(self.sphere_sizes) != n + 1 or len(self.ball_sizes) != n + 1:
            raise ArgumentError("table length does not match radius_max")
        if self.sphere_sizes[0] != 1:
            raise ArgumentError("sphere of radius 0 must have size 1")
        acc = 0
        for s, b in zip(self.sphere_sizes, self.ball_sizes):
            if s < 0:
                raise ArgumentError("sphere sizes must be nonnegative")
            acc += s
            if b != acc:
                raise ArgumentError("ball sizes must be partial sums of sphere sizes")

    def to_csv_lines(self) -> list[str]:
        lines = ["k,sigma,beta"]
        for k in range(self.radius_max + 1):
            lines.append(f"{k},{self.sphere_sizes[k]},{self.ball_sizes[k]}")
        return lines

    def to_json_dict(self) -> dict:
        return {
            "group": self.group_description,
            "radius_max": str(self.radius_max),
            "sphere_sizes": [str(x) for x in self.sphere_sizes],
            "ball_sizes": [str(x) for x in self.ball_sizes],
        }


def _table(radius: int, sigma: list[int], description: str) -> BallTable:
    beta = []
    acc = 0
    for s in sigma:
        acc += s
        beta.append(acc)
    return BallTable(radius, tuple(sigma), tuple(beta), description)


def trivial_ball_table(kmax: int) -> BallTable:
    """Ball table of the one-element group (a marked group cannot carry
    an empty generating set, so this table is constructed directly)."""
    if kmax < 0:
        raise ArgumentError("kmax must be nonnegative")
    return _table(kmax, [1] + [0] * kmax, "trivial group")


def enumerate_balls(m: MarkedGroup, kmax: int,
                    element_budget: int = DEFAULT_ELEMENT_BUDGET) -> BallTable:
    """Exact sphere sizes sigma(0..kmax) of the marked group.

    Raises BudgetExceededError when the visited set would outgrow
    ``element_budget``; the error carries the last completed radius and
    the partial table up to it.
    """
    if kmax < 0:
        raise ArgumentError("kmax must be nonnegative")
    if element_budget <= 0:
        raise ArgumentError("element_budget must be positive")
    fam = m.family
    gens = m.effective_generating_set()
    mul = fam.multiply
    key = fam.canonical_key
    ident = fam.identity()

    visited = {key(ident)}
    frontier = [ident]
    sigma = [1]
    stored = 1
    for k in range(1, kmax + 1):
        new_elements = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                kh = key(h)
                if kh not in visited:
                    if stored >= element_budget:
                        raise BudgetExceededError(
                            f"element budget {element_budget} exhausted while "
                            f"expanding radius {k}",
                            last_radius=k - 1,
                            partial=_table(k - 1, sigma[:k], m.describe()))
                    visited.add(kh)
                    stored += 1
                    new_elements.append(h)
        sigma.append(len(new_elements))
        frontier = new_elements
    return _table(kmax, sigma, m.describe())


def word_length(m: MarkedGroup, g, kmax: int,
                element_budget: int = DEFAULT_ELEMENT_BUDGET) -> int | None:
    """Least k <= kmax with g in the k-ball, or None when kmax is not
    enough.  Family mismatch raises StructuralError."""
    fam = m.family
    target = fam.canonicalize(g)
    ident = fam.identity()
    if target == ident:
        return 0
    target_key = fam.canonical_key(target)
    gens = m.effective_generating_set()
    mul = fam.multiply
    key = fam.canonical_key

    visited = {key(ident)}
    frontier = [ident]
    stored = 1
    for k in range(1, kmax + 1):
        new_elements = []
        for g0 in frontier:
            for s in gens:
                h = mul(g0, s)
                kh = key(h)
                if kh not in visited:
                    if kh == target_key:
                        return k
                    if stored >= element_budget:
                        raise BudgetExceededError(
                            f"element budget {element_budget} exhausted while "
                            f"expanding radius {k}", last_radius=k - 1)
                    visited.add(kh)
                    stored += 1
                    new_elements.append(h)
        frontier = new_elements
        if not frontier:
            return None
    return None


def word_distance(m: MarkedGroup, g, h, kmax: int) -> int | None:
    """Word-metric distance d_S(g, h) = word length of g^-1 h."""
    fam = m.family
    a = fam.canonicalize(g)
    b = fam.canonicalize(h)
    return word_length(m, fam.multiply(fam.inverse(a), b), kmax)
