"""Seifert presentations of Brieskorn spheres and eigenvalue bookkeeping.

The fundamental group of Sigma(a1, a2, a3) is presented as

    < x1, x2, x3, h | h central, x_i^{a_i} h^{b_i} = 1, x1 x2 x3 = h^{b0} >

with ``a1 a2 a3 b0 + sum_i (a/a_i) b_i = +-1``.  Eigenvalues are stored as
exact "turns" ``q`` in [0, 1), standing for exp(2 pi i q).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "SeifertPresentation",
    "seifert_presentation",
    "SU2Class",
    "enumerate_su2",
    "RotationAssignment",
    "su3_candidates",
    "su2_candidates",
]


@dataclass(frozen=True)
class SeifertPresentation:
    a: tuple[int, int, int]
    b0: int
    b: tuple[int, int, int]

    def __post_init__(self):
        if len(self.a) != 3 or len(self.b) != 3:
            raise ValueError("exactly three exceptional fibres are supported")
        if any(ai < 2 for ai in self.a):
            raise ValueError(f"orders must be >= 2, got {self.a}")
        for x, y in itertools.combinations(self.a, 2):
            if math.gcd(x, y) != 1:
                raise ValueError(f"orders {self.a} are not pairwise coprime")
        if not all(0 < bi < ai for ai, bi in zip(self.a, self.b)):
            raise ValueError(f"need 0 < b_i < a_i, got b={self.b}")
        if self.euler_number not in (1, -1):
            raise ValueError(f"{self} is not a homology sphere presentation (got {self.euler_number})")

    @property
    def order(self) -> int:
        return self.a[0] * self.a[1] * self.a[2]

    @property
    def euler_number(self) -> int:
        a = self.order
        return a * self.b0 + sum(a // ai * bi for ai, bi in zip(self.a, self.b))

    @property
    def label(self) -> str:
        return "Sigma({},{},{})".format(*self.a)


def seifert_presentation(a1: int, a2: int, a3: int) -> SeifertPresentation:
    """Canonical presentation: lexicographically smallest ``b`` in ``0 < b_i < a_i``, then ``b0``."""
    a = (a1, a2, a3)
    if any(ai < 2 for ai in a):
        raise ValueError(f"orders must be >= 2, got {a}")
    for x, y in itertools.combinations(a, 2):
        if math.gcd(x, y) != 1:
            raise ValueError(f"orders {a} are not pairwise coprime")
    n = a1 * a2 * a3
    for b in itertools.product(*(range(1, ai) for ai in a)):
        s = sum(n // ai * bi for ai, bi in zip(a, b))
        for target in (1, -1):
            if (target - s) % n == 0:
                return SeifertPresentation(a, (target - s) // n, b)
    raise AssertionError("unreachable for pairwise coprime orders")


@dataclass(frozen=True)
class SU2Class:
    """Conjugacy class of an irreducible SU(2) representation.

    ``rotation[i] = l_i`` puts the eigenvalues of x_i at exp(+-i pi l_i / a_i);
    ``h_sign`` is the image of the fibre class.
    """

    rotation: tuple[int, int, int]
    h_sign: int

    def angles(self, p: SeifertPresentation) -> tuple[float, float, float]:
        return tuple(math.pi * l / ai for l, ai in zip(self.rotation, p.a))


def _strict_triangle(t1: Fraction, t2: Fraction, t3: Fraction) -> bool:
    # angles in units of pi
    return abs(t1 - t2) < t3 < min(t1 + t2, 2 - t1 - t2)


def enumerate_su2(p: SeifertPresentation) -> list[SU2Class]:
    """All conjugacy classes of irreducible SU(2) representations, by rotation numbers.

    x_i^{a_i} = h^{-b_i} fixes the parity of l_i; the product relation asks
    that x1 x2 lie in the class of h^{b0} x3^{-1}, which for non-central
    classes is the strict spherical triangle condition on the angles.
    """
    out = []
    for eps in (1, -1):
        parities = [bi % 2 if eps == -1 else 0 for bi in p.b]
        choices = [[l for l in range(1, ai) if l % 2 == par] for ai, par in zip(p.a, parities)]
        flip = eps == -1 and p.b0 % 2 == 1
        for ls in itertools.product(*choices):
            t = [Fraction(l, ai) for l, ai in zip(ls, p.a)]
            t3 = 1 - t[2] if flip else t[2]
            if _strict_triangle(t[0], t[1], t3):
                out.append(SU2Class(tuple(ls), eps))
    return out


@dataclass(frozen=True)
class RotationAssignment:
    """Fixed conjugacy classes for the three generators and the fibre.

    ``h_turn`` is the fibre image exp(2 pi i h_turn) times the identity of
    U(n); ``turns[i]`` is the sorted eigenvalue multiset of x_i.  ``n = 2``
    is used for the SU(2) x {1} sector.
    """

    n: int
    h_turn: Fraction
    turns: tuple[tuple[Fraction, ...], ...]
    target_turn: Fraction

    @property
    def central_index(self) -> int:
        """m with h -> exp(2 pi i m / 3) (SU(3)), or 0/1 for h -> +-1 (SU(2))."""
        return int(self.h_turn * 3) if self.n == 3 else int(self.h_turn * 2)

    def is_central(self, i: int) -> bool:
        return len(set(self.turns[i])) == 1

    @property
    def any_central(self) -> bool:
        return any(self.is_central(i) for i in range(3))

    def eigenvalues(self):
        import numpy as np

        return np.exp(2j * np.pi * np.array([[float(q) for q in row] for row in self.turns]))

    def target(self):
        import numpy as np

        return np.exp(2j * np.pi * float(self.target_turn)) * np.eye(self.n)

    def describe(self) -> str:
        rows = " ".join("{" + ",".join(str(q) for q in row) + "}" for row in self.turns)
        return f"U({self.n}) h={self.h_turn} {rows}"


def _frac1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _candidates(p: SeifertPresentation, n: int, h_turns) -> list[RotationAssignment]:
    out = []
    for h in h_turns:
        per_gen = []
        for ai, bi in zip(p.a, p.b):
            # lambda^{a_i} = exp(-2 pi i h b_i)
            roots = sorted(_frac1((-h * bi + k) / ai) for k in range(ai))
            classes = [
                ms for ms in itertools.combinations_with_replacement(roots, n) if sum(ms).denominator == 1
            ]
            per_gen.append(classes)
        target = _frac1(h * p.b0)
        for combo in itertools.product(*per_gen):
            out.append(RotationAssignment(n, h, tuple(combo), target))
    return out


def su3_candidates(p: SeifertPresentation) -> list[RotationAssignment]:
    """Every SU(3) eigenvalue assignment with scalar fibre image exp(2 pi i m/3)."""
    return _candidates(p, 3, [Fraction(m, 3) for m in range(3)])


def su2_candidates(p: SeifertPresentation) -> list[RotationAssignment]:
    """Every SU(2) assignment, fibre image +-1; used for the S(U(2) x U(1)) sector."""
    return _candidates(p, 2, [Fraction(0), Fraction(1, 2)])
