"""Finite-group cross-check for Sigma(2,3,5).

Its fundamental group is the binary icosahedral group.  This module
confirms the order of the presented group by coset enumeration (sympy),
realises the presentation exactly inside the unit quaternions over
Q(sqrt 5), and builds the full character table from symmetric powers and
Galois conjugates.  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from tau_engine.brieskorn.seifert import SeifertPresentation, seifert_presentation

__all__ = [
    "Q5",
    "presented_order",
    "binary_icosahedral",
    "generator_images",
    "conjugacy_classes",
    "character_table",
    "irrep_dimensions",
    "irreducible_counts",
    "word_characters",
]


@dataclass(frozen=True)
class Q5:
    """a + b sqrt(5) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __add__(self, o):
        o = _q5(o)
        return Q5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _q5(o)
        return Q5(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _q5(o) - self

    def __neg__(self):
        return Q5(-self.a, -self.b)

    def __mul__(self, o):
        o = _q5(o)
        return Q5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _q5(o)
        norm = o.a * o.a - 5 * o.b * o.b
        return self * Q5(o.a / norm, -o.b / norm)

    def galois(self) -> "Q5":
        return Q5(self.a, -self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 5**0.5


def _q5(x) -> Q5:
    return x if isinstance(x, Q5) else Q5(Fraction(x))


ZERO, ONE, HALF = Q5(), Q5(Fraction(1)), Q5(Fraction(1, 2))
PHI_HALF = Q5(Fraction(1, 4), Fraction(1, 4))  # phi / 2
INV_PHI_HALF = Q5(Fraction(-1, 4), Fraction(1, 4))  # 1 / (2 phi)

Quat = tuple  # (w, x, y, z) of Q5


def qmul(p: Quat, q: Quat) -> Quat:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qinv(q: Quat) -> Quat:
    # unit quaternions: inverse is the conjugate
    return (q[0], -q[1], -q[2], -q[3])


def qpow(q: Quat, k: int) -> Quat:
    if k < 0:
        return qpow(qinv(q), -k)
    out = (ONE, ZERO, ZERO, ZERO)
    for _ in range(k):
        out = qmul(out, q)
    return out


def _even_permutations():
    perms = []
    for p in permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        if inversions % 2 == 0:
            perms.append(p)
    return perms


def binary_icosahedral() -> list[Quat]:
    """The 120 unit quaternions of the binary icosahedral group."""
    elems = set()
    for i in range(4):
        for s in (1, -1):
            v = [ZERO] * 4
            v[i] = _q5(s)
            elems.add(tuple(v))
    for signs in range(16):
        elems.add(tuple(HALF if signs >> i & 1 else -HALF for i in range(4)))
    base = (ZERO, HALF, PHI_HALF, INV_PHI_HALF)
    for perm in _even_permutations():
        for signs in range(8):
            coords = [base[1], base[2], base[3]]
            coords = [c if signs >> i & 1 else -c for i, c in enumerate(coords)]
            v = [ZERO] + coords
            elems.add(tuple(v[perm[i]] for i in range(4)))
    return sorted(elems, key=lambda q: tuple((c.a, c.b) for c in q))


def presented_order(p: SeifertPresentation) -> int:
    """Order of the presented fundamental group, by Todd-Coxeter (sympy)."""
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    _, x1, x2, x3, h = free_group("x1 x2 x3 h")
    xs = (x1, x2, x3)
    rels = [h * x * h**-1 * x**-1 for x in xs]
    rels += [x ** ai * h ** bi for x, ai, bi in zip(xs, p.a, p.b)]
    rels.append(x1 * x2 * x3 * h ** (-p.b0))
    return int(FpGroup(x1.group, rels).order())


def _closure(gens: list[Quat]) -> set[Quat]:
    identity = (ONE, ZERO, ZERO, ZERO)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                e = qmul(g, s)
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return seen


def generator_images(p: SeifertPresentation | None = None) -> dict[str, Quat]:
    """Images of x1, x2, x3, h in the binary icosahedral group satisfying every relation."""
    p = p or seifert_presentation(2, 3, 5)
    if p.a != (2, 3, 5):
        raise ValueError("only Sigma(2,3,5) is handled here")
    group = binary_icosahedral()
    minus_one = (-ONE, ZERO, ZERO, ZERO)
    identity = (ONE, ZERO, ZERO, ZERO)
    x1 = (ZERO, ONE, ZERO, ZERO)
    for x2 in group:
        for h in (minus_one, identity):
            x3 = qmul(qinv(qmul(x1, x2)), qpow(h, p.b0))
            rels = [qmul(qpow(x, a), qpow(h, b)) for x, a, b in zip((x1, x2, x3), p.a, p.b)]
            if all(r == identity for r in rels) and len(_closure([x1, x2, x3])) == 120:
                return {"x1": x1, "x2": x2, "x3": x3, "h": h}
    raise AssertionError("no surjection onto the binary icosahedral group found")


def conjugacy_classes(group: list[Quat]) -> list[list[Quat]]:
    remaining = set(group)
    classes = []
    for g in group:
        if g not in remaining:
            continue
        cls = {qmul(qmul(k, g), qinv(k)) for k in group}
        remaining -= cls
        classes.append(sorted(cls, key=lambda q: tuple((c.a, c.b) for c in q)))
    return classes


def _sym_power_character(q: Quat, k: int) -> Q5:
    # trace of Sym^k of the 2-dim rep: Chebyshev U_k(real part)
    a = q[0]
    prev, cur = ONE, 2 * a
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2 * a * cur - prev
    return cur


def character_table(group: list[Quat] | None = None) -> dict[str, list[Q5]]:
    """Characters on conjugacy-class representatives, keyed by a label."""
    group = group or binary_icosahedral()
    reps = [cls[0] for cls in conjugacy_classes(group)]
    table = {f"Sym{k}": [_sym_power_character(g, k) for g in reps] for k in range(6)}
    table["Sym1'"] = [v.galois() for v in table["Sym1"]]
    table["Sym2'"] = [v.galois() for v in table["Sym2"]]
    table["Sym1*Sym1'"] = [u * v for u, v in zip(table["Sym1"], table["Sym1'"])]
    return table


def inner_product(chi: list[Q5], psi: list[Q5], sizes: list[int]) -> Q5:
    total = ZERO
    for c, d, n in zip(chi, psi, sizes):
        total = total + c * d * n  # all characters here are real
    return total / sum(sizes)


def irrep_dimensions() -> list[int]:
    """Dimensions of all irreducible representations, after checking the table is complete.

    Raises AssertionError if orthonormality, class count or the sum of
    squared dimensions fails.
    """
    group = binary_icosahedral()
    classes = conjugacy_classes(group)
    sizes = [len(c) for c in classes]
    table = character_table(group)
    chars = list(table.values())
    for i, chi in enumerate(chars):
        for j, psi in enumerate(chars):
            expected = ONE if i == j else ZERO
            assert inner_product(chi, psi, sizes) == expected, (i, j)
    e = classes.index([(ONE, ZERO, ZERO, ZERO)])
    dims = [int(chi[e].a) for chi in chars]
    assert len(chars) == len(classes)
    assert sum(d * d for d in dims) == len(group)
    return sorted(dims)


def irreducible_counts() -> dict[int, int]:
    """Number of irreducible representations of each dimension."""
    out: dict[int, int] = {}
    for d in irrep_dimensions():
        out[d] = out.get(d, 0) + 1
    return out


def word_characters(dim: int = 3) -> list[tuple[float, ...]]:
    """Characters of every ``dim``-dimensional irrep on the solver's word list."""
    img = generator_images()
    x1, x2, x3 = img["x1"], img["x2"], img["x3"]
    words = (
        x1,
        x2,
        x3,
        qmul(x1, x2),
        qmul(x1, x3),
        qmul(x2, x3),
        qmul(qmul(x1, x2), x3),
        qmul(qmul(qmul(x1, x2), qinv(x1)), qinv(x2)),
    )
    group = binary_icosahedral()
    classes = conjugacy_classes(group)
    table = character_table(group)
    e = classes.index([(ONE, ZERO, ZERO, ZERO)])
    index = {g: i for i, cls in enumerate(classes) for g in cls}
    out = []
    for chi in table.values():
        if chi[e] == Q5(Fraction(dim)):
            out.append(tuple(float(chi[index[w]]) for w in words))
    return sorted(out)
