"""Binomial identities behind the section count on Halphen cycles."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence


def binom(n: int, k: int) -> int:
    """C(n, k), zero when k < 0 or k > n (including negative n)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class IdentityResult:
    lhs: int
    rhs: int
    u: int
    k: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class SeriesIdentityResult:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    order: int
    j: Optional[int] = None
    k: Optional[int] = None

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def component_contribution(u: int, i: int, k: int) -> int:
    return binom(u - 2 - i + k, k - 1) * binom(i + k, k)


def section_sum(u: int, k: int) -> int:
    return sum(component_contribution(u, i, k) for i in range(u))


def section_dim_identity(u: int, k: int) -> IdentityResult:
    """Sections of O(k,k) on a Halphen cycle versus O(2k) on P^(u-1)."""
    if u < 1 or k < 1:
        raise ValueError("u and k must be positive")
    return IdentityResult(section_sum(u, k), binom(u - 1 + 2 * k, 2 * k), u, k)


def sweep(max_u: int, max_k: int) -> list[IdentityResult]:
    return [section_dim_identity(u, k) for u in range(1, max_u + 1) for k in range(1, max_k + 1)]


def product_sections(a: int, b: int, k: int) -> int:
    """dim H^0(P^a x P^b, O(k,k)); zero if either factor is empty (dim -1)."""
    if a < 0 or b < 0:
        return 0
    return binom(a + k, k) * binom(b + k, k)


def glued_section_count(shapes: Sequence[tuple[int, int]], overlaps: Sequence[Optional[tuple[int, int]]], k: int) -> int:
    """Sum over components of own sections minus the sections on the overlap."""
    total = 0
    for (a, b), ov in zip(shapes, overlaps):
        total += product_sections(a, b, k)
        if ov is not None:
            total -= product_sections(ov[0], ov[1], k)
    return total


# ---------------------------------------------------------------------------
# power series over Z, truncated


def series_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def inverse_power_of_one_minus_x(m: int, order: int) -> list[int]:
    """(1 - x)^(-m) by repeated multiplication with the geometric series."""
    out = [1] + [0] * order
    geo = [1] * (order + 1)
    for _ in range(m):
        out = series_mul(out, geo, order)
    return out


def snake_oil_check(j: int, order: int) -> SeriesIdentityResult:
    """sum_r C(r, j) x^r against x^j / (1 - x)^(j+1), coefficients up to x^order."""
    if order <= j:
        raise ValueError("truncation order must exceed j")
    lhs = tuple(binom(r, j) for r in range(order + 1))
    shifted = [0] * j + [1]
    rhs = tuple(series_mul(shifted, inverse_power_of_one_minus_x(j + 1, order), order))
    return SeriesIdentityResult(lhs, rhs, order, j=j)


def generating_function_check(k: int, order: int) -> tuple[SeriesIdentityResult, SeriesIdentityResult]:
    """Both sides of the section identity, summed against x^(u-1), versus (1-x)^(-1-2k)."""
    target = tuple(inverse_power_of_one_minus_x(1 + 2 * k, order))
    lhs = tuple(section_sum(n + 1, k) for n in range(order + 1))
    rhs = tuple(binom(n + 2 * k, 2 * k) for n in range(order + 1))
    return SeriesIdentityResult(lhs, target, order, k=k), SeriesIdentityResult(rhs, target, order, k=k)
