"""Closed forms for tau of Sigma(2, p, q), q = 2pk +- r.

Each family is ``A k^2 +- B k + C`` with the sign following q.
"""

from __future__ import annotations

__all__ = ["FAMILIES", "tau_table", "family_of", "family_members", "OutsideTableError"]

# p -> {r: (A, B, C)}
FAMILIES: dict[int, dict[int, tuple[int, int, int]]] = {
    3: {1: (3, 1, 0)},
    5: {1: (33, 9, 0), 3: (33, 19, 2)},
    7: {1: (138, 26, 0), 3: (138, 62, 4), 5: (138, 102, 16)},
    9: {1: (390, 58, 0), 5: (390, 210, 24), 7: (390, 298, 52)},
}


class OutsideTableError(ValueError):
    pass


def family_of(p: int, q: int) -> tuple[int, int, int]:
    """``(r, k, sign)`` with ``q = 2pk + sign * r`` and ``k >= 1``."""
    if p not in FAMILIES:
        raise OutsideTableError(f"p={p} is not tabulated (p must be one of 3, 5, 7, 9)")
    period = 2 * p
    for r in FAMILIES[p]:
        for sign in (1, -1):
            k, rem = divmod(q - sign * r, period)
            if rem == 0 and k >= 1:
                return r, k, sign
    raise OutsideTableError(f"Sigma(2,{p},{q}) is not in a tabulated family")


def tau_table(p: int, q: int) -> int:
    """Tabulated tau of Sigma(2, p, q).

    >>> tau_table(3, 13)
    14
    """
    r, k, sign = family_of(p, q)
    a, b, c = FAMILIES[p][r]
    return a * k * k + sign * b * k + c


def family_members(p: int, k_max: int) -> list[int]:
    """Every tabulated q for this p with k <= k_max, ascending."""
    if p not in FAMILIES:
        raise OutsideTableError(f"p={p} is not tabulated (p must be one of 3, 5, 7, 9)")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    return sorted(2 * p * k + s * r for r in FAMILIES[p] for k in range(1, k_max + 1) for s in (1, -1))
