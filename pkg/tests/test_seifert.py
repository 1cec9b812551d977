import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tau_engine.brieskorn.seifert import (
    SeifertPresentation,
    enumerate_su2,
    seifert_presentation,
    su2_candidates,
    su3_candidates,
)


def euclid_oracle(a):
    """Both sign choices via modular inverses; the lexicographically smaller b wins."""
    n = math.prod(a)
    options = []
    for e in (1, -1):
        b = tuple((e * pow(n // ai, -1, ai)) % ai for ai in a)
        s = sum(n // ai * bi for ai, bi in zip(a, b))
        options.append((b, (e - s) // n))
    b, b0 = min(options)
    return b0, b


def test_sigma_235():
    p = seifert_presentation(2, 3, 5)
    assert (p.b0, p.b) == (-1, (1, 1, 1))
    assert 30 * p.b0 + 15 + 10 + 6 == 1


@pytest.mark.parametrize("a", [(2, 3, 7), (2, 3, 11), (2, 5, 7), (2, 7, 9), (3, 4, 5), (2, 9, 25)])
def test_matches_euclid_oracle(a):
    p = seifert_presentation(*a)
    assert (p.b0, p.b) == euclid_oracle(a)
    assert p.euler_number in (1, -1)


coprime_triples = st.tuples(st.integers(2, 40), st.integers(2, 40), st.integers(2, 40)).filter(
    lambda a: all(math.gcd(x, y) == 1 for x, y in ((a[0], a[1]), (a[0], a[2]), (a[1], a[2])))
)


@given(coprime_triples)
def test_euclid_oracle_property(a):
    p = seifert_presentation(*a)
    assert (p.b0, p.b) == euclid_oracle(a)


@pytest.mark.parametrize("a", [(2, 4, 5), (3, 3, 5), (1, 3, 5), (6, 10, 15)])
def test_rejects_bad_orders(a):
    with pytest.raises(ValueError):
        seifert_presentation(*a)


def test_presentation_validates_itself():
    with pytest.raises(ValueError):
        SeifertPresentation((2, 3, 5), 0, (1, 1, 1))
    with pytest.raises(ValueError):
        SeifertPresentation((2, 3, 5), -1, (1, 1, 5))


def su2_oracle(p, samples=4001):
    """Count SU(2) classes by building matrices and scanning the angle between axes.

    For x1, x2 with fixed eigenvalue angles, tr(x1 x2) sweeps a closed interval
    as the axis of x2 turns; the class of h^{b0} x3^{-1} is reached for an
    irreducible representation exactly when its trace lies strictly inside.
    """

    def diag(t):
        return np.diag([np.exp(1j * t), np.exp(-1j * t)])

    def rot(beta):
        return np.array([[np.cos(beta / 2), -np.sin(beta / 2)], [np.sin(beta / 2), np.cos(beta / 2)]])

    count = 0
    for eps in (1, -1):
        h = eps * np.eye(2)
        per_gen = []
        for ai, bi in zip(p.a, p.b):
            ls = []
            for l in range(1, ai):
                x = diag(np.pi * l / ai)
                if np.allclose(np.linalg.matrix_power(x, ai) @ np.linalg.matrix_power(h, bi % 2), np.eye(2)):
                    ls.append(l)
            per_gen.append(ls)
        betas = np.linspace(0, np.pi, samples)
        for l1 in per_gen[0]:
            for l2 in per_gen[1]:
                x1 = diag(np.pi * l1 / p.a[0])
                traces = [
                    np.trace(x1 @ rot(b) @ diag(np.pi * l2 / p.a[1]) @ rot(b).T).real for b in betas
                ]
                lo, hi = min(traces), max(traces)
                for l3 in per_gen[2]:
                    x3 = diag(np.pi * l3 / p.a[2])
                    want = np.trace(np.linalg.matrix_power(h, p.b0 % 2) @ np.linalg.inv(x3)).real
                    if lo + 1e-9 < want < hi - 1e-9:
                        count += 1
    return count


@pytest.mark.parametrize(
    "a, expected",
    [((2, 3, 5), 2), ((2, 3, 7), 2), ((2, 3, 11), 4), ((2, 3, 13), 4), ((2, 5, 7), 4), ((2, 3, 17), 6)],
)
def test_su2_counts(a, expected):
    p = seifert_presentation(*a)
    assert len(enumerate_su2(p)) == expected


@pytest.mark.parametrize("a", [(2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 5, 7), (2, 5, 9), (3, 4, 5), (2, 7, 9)])
def test_su2_enumeration_matches_matrix_oracle(a):
    p = seifert_presentation(*a)
    assert len(enumerate_su2(p)) == su2_oracle(p)


def test_su3_candidates_235():
    p = seifert_presentation(2, 3, 5)
    cands = su3_candidates(p)
    assert len(cands) == len({(c.h_turn, c.turns) for c in cands})
    order_two = {c.turns[0] for c in cands if c.h_turn == 0}
    assert (Fraction(0), Fraction(1, 2), Fraction(1, 2)) in order_two  # {1, -1, -1}
    assert (Fraction(0), Fraction(0), Fraction(0)) in order_two
    # {-1, -1, -1} has determinant -1
    assert (Fraction(1, 2),) * 3 not in order_two


@pytest.mark.parametrize("a", [(2, 3, 5), (2, 3, 7), (2, 5, 7)])
def test_candidates_satisfy_the_central_equations(a):
    p = seifert_presentation(*a)
    for ra in su3_candidates(p) + su2_candidates(p):
        assert ra.target_turn == (ra.h_turn * p.b0) % 1
        for ai, bi, turns in zip(p.a, p.b, ra.turns):
            assert list(turns) == sorted(turns)
            assert sum(turns).denominator == 1  # determinant one
            for q in turns:
                assert (ai * q + ra.h_turn * bi).denominator == 1  # x^a h^b = 1


def test_candidate_eigenvalues_and_target():
    p = seifert_presentation(2, 3, 7)
    ra = su3_candidates(p)[5]
    d = ra.eigenvalues()
    assert d.shape == (3, 3)
    assert np.allclose(np.prod(d, axis=1), 1)
    assert np.allclose(ra.target(), np.exp(2j * np.pi * float(ra.target_turn)) * np.eye(3))
