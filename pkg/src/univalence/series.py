"""Truncated power-series arithmetic over complex coefficients.

A :class:`PowerSeries` stores the Taylor coefficients c_0..c_N of an analytic
function about a fixed center, representing sum_k c_k (w - z0)^k.  All
operations are pure functions of immutable inputs and truncate at the order
of their shortest operand.  Coefficients are double-precision complex; the
recurrences below are exact given exact inputs, so closed-form input series
keep near machine accuracy through reciprocal, powers and composition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CenterMismatchError,
    NonInvertibleSeriesError,
    NormalizationError,
)

__all__ = [
    "PowerSeries",
    "gen_binomial",
    "ps_mul",
    "ps_recip",
    "ps_derivative",
    "ps_pow_real",
    "ps_compose",
    "ps_eval",
]

#: constant-term tolerance for normalized bases (`ps_pow_real`)
_UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated Taylor expansion about ``center`` with coefficients ``coeffs``."""

    center: complex
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not (np.all(np.isfinite(c.real)) and np.all(np.isfinite(c.imag))):
            raise ValueError("series coefficients must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        tail = ", ..." if self.order > 3 else ""
        return f"PowerSeries(center={self.center:.6g}, order={self.order}, [{head}{tail}])"


def gen_binomial(alpha: float, m: int) -> float:
    """Generalized binomial coefficient alpha*(alpha-1)*...*(alpha-m+1)/m!.

    Defined for real ``alpha`` and integer ``m >= 0``; equals 1 at m = 0 and
    vanishes exactly when the falling factorial crosses zero (integer
    ``alpha`` with 0 <= alpha < m).
    """
    if m < 0:
        raise ValueError("m must be a non-negative integer")
    if m == 0:
        return 1.0
    out = 1.0
    for i in range(m):
        out *= (alpha - i) / (i + 1)
    return out


def _common_order(a: PowerSeries, b: PowerSeries) -> int:
    return min(a.order, b.order)


def _check_centers(a: PowerSeries, b: PowerSeries) -> None:
    if a.center != b.center:
        raise CenterMismatchError(
            f"series centers differ: {a.center} vs {b.center}"
        )


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at min(a.order, b.order)."""
    _check_centers(a, b)
    n = _common_order(a, b)
    prod = np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1]
    return PowerSeries(a.center, prod)


def ps_recip(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse: ps_mul(a, ps_recip(a)) == [1, 0, ..., 0].

    Raises :class:`NonInvertibleSeriesError` when the constant term vanishes
    (for difference-quotient series this means f'(z) = 0 at the center).
    """
    c = a.coeffs
    if c[0] == 0:
        raise NonInvertibleSeriesError(
            "non-invertible series: constant term is zero (f'(z)=0: "
            "not locally univalent at the center)"
        )
    n = a.order
    b = np.zeros(n + 1, dtype=np.complex128)
    b[0] = 1.0 / c[0]
    for k in range(1, n + 1):
        b[k] = -np.dot(c[1 : k + 1], b[k - 1 :: -1]) / c[0]
    return PowerSeries(a.center, b)


def ps_derivative(a: PowerSeries) -> PowerSeries:
    """Termwise derivative; the order drops by one."""
    if a.order < 1:
        raise ValueError("derivative needs order >= 1")
    k = np.arange(1, a.order + 1)
    return PowerSeries(a.center, k * a.coeffs[1:])


def ps_pow_real(a: PowerSeries, lam: float) -> PowerSeries:
    """Real power a**lam of a series with constant term 1.

    The branch is the one with constant term 1, computed by the one-pass
    recurrence n*b_n = sum_{k=1..n} ((lam+1)k - n) a_k b_{n-k}, equivalent to
    the defining relation (a^lam)' * a = lam * a' * a^lam.
    """
    c = a.coeffs
    if abs(c[0] - 1.0) > _UNIT_TOL:
        raise NormalizationError(
            f"unnormalized base: constant term {c[0]} is not 1"
        )
    n = a.order
    b = np.zeros(n + 1, dtype=np.complex128)
    b[0] = 1.0
    if n == 0:
        return PowerSeries(a.center, b)
    ks = np.arange(n + 1, dtype=np.float64)
    for m in range(1, n + 1):
        w = (lam + 1.0) * ks[1 : m + 1] - m
        b[m] = np.dot(w * c[1 : m + 1], b[m - 1 :: -1]) / m
    return PowerSeries(a.center, b)


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Truncated composition outer(inner(t)) by Horner's scheme.

    ``inner`` must have constant term exactly 0; recentring the outer series
    so that this holds is the caller's job.  The result is expanded about
    ``inner.center``.
    """
    if inner.coeffs[0] != 0:
        raise ValueError(
            f"inner series must have zero constant term, got {inner.coeffs[0]}"
        )
    n = _common_order(outer, inner)
    inner_t = PowerSeries(inner.center, inner.coeffs[: n + 1])
    seed = np.zeros(n + 1, dtype=np.complex128)
    seed[0] = outer.coeffs[n]
    acc = PowerSeries(inner.center, seed)
    # Horner: acc <- acc*inner + c_k
    for k in range(n - 1, -1, -1):
        acc = ps_mul(acc, inner_t)
        new = acc.coeffs.copy()
        new[0] += outer.coeffs[k]
        acc = PowerSeries(inner.center, new)
    return acc


def ps_eval(a: PowerSeries, w: complex | np.ndarray) -> complex | np.ndarray:
    """Horner evaluation at w; convergence inside a reliable radius is the caller's concern."""
    t = np.asarray(w, dtype=np.complex128) - a.center
    acc = np.full_like(t, a.coeffs[-1])
    for k in range(a.order - 1, -1, -1):
        acc = acc * t + a.coeffs[k]
    if np.ndim(w) == 0:
        return complex(acc)
    return acc


def _horner_scalar(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Horner evaluation of raw coefficients at displacements t (no recentering)."""
    acc = np.full_like(np.asarray(t, dtype=np.complex128), coeffs[-1])
    for k in range(coeffs.size - 2, -1, -1):
        acc = acc * t + coeffs[k]
    return acc
