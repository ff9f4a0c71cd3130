"""Stable special-function kernel: log-gamma, gamma ratios, Pochhammer
symbols, Gegenbauer norms and the eigenvalues of the edge-weighted
fractional Laplacian.

All functions here are pure; they can be called concurrently without
restriction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


# Value of the logarithmic-kernel constant: the weighted single-layer
# operator applied to the n=0 mode at s = 1/2 on (0,1).  Kept as a named
# constant because eigenvalue_mu(0, 1/2) is a genuine pole.
LOG_KERNEL_Q00 = -2.0 * math.log(2.0)

# Above this argument size gamma ratios switch from direct gamma
# quotients to the asymptotic (Stirling/Bernoulli) difference, which
# avoids the ~log10(x) digits lost to exp(lgamma - lgamma) cancellation.
_ASYMPTOTIC_CUTOFF = 100.0

# Bernoulli-number coefficients B_{2n} / (2n (2n-1)) of the Stirling
# tail sum_{n>=1} c_n x^{1-2n}.  Five terms give < 1e-18 relative error
# for x >= 100.
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
)


@dataclass(frozen=True)
class SExponent:
    """Fractional order s, restricted to the open interval (0, 1)."""

    s: float

    def __post_init__(self):
        if not (0.0 < self.s < 1.0):
            raise DomainError(f"fractional order must satisfy 0 < s < 1, got {self.s}")

    def __float__(self) -> float:
        return self.s


def s_value(s: SExponent | float) -> float:
    """Coerce an SExponent (or plain float) to a validated float in (0,1)."""
    if isinstance(s, SExponent):
        return s.s
    return SExponent(float(s)).s


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _stirling_tail(x: float) -> float:
    xi = 1.0 / x
    x2 = xi * xi
    acc = 0.0
    p = xi
    for c in _STIRLING_COEFFS:
        acc += c * p
        p *= x2
    return acc


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a) / Gamma(b), accurate for large arguments.

    For max(a, b) above the asymptotic cutoff the ratio is formed from a
    cancellation-free rearrangement of the Stirling series,

        lnG(a) - lnG(b) = (a - 1/2) log1p((a-b)/b) + (a-b) (log b - 1)
                          + S(a) - S(b),

    after shifting the smaller argument past the cutoff with the
    recurrence Gamma(z) = Gamma(z+1)/z.  Overflow is reported as inf.
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"gamma_ratio requires positive arguments, got ({a}, {b})")
    if max(a, b) <= _ASYMPTOTIC_CUTOFF:
        return math.gamma(a) / math.gamma(b)

    # Shift both arguments above the cutoff; track the shift products.
    shift_a = 1.0
    while a < _ASYMPTOTIC_CUTOFF:
        shift_a *= a
        a += 1.0
    shift_b = 1.0
    while b < _ASYMPTOTIC_CUTOFF:
        shift_b *= b
        b += 1.0

    d = a - b
    t = (a - 0.5) * math.log1p(d / b) + d * (math.log(b) - 1.0)
    t += _stirling_tail(a) - _stirling_tail(b)
    try:
        ratio = math.exp(t)
    except OverflowError:
        return math.inf * shift_b / shift_a
    return ratio * (shift_b / shift_a)


def pochhammer(z: float, k: int) -> float:
    """Rising factorial (z)_k = Gamma(z+k) / Gamma(z).

    Uses the running product for k <= 64 (or whenever z <= 0, where the
    gamma quotient is unusable), and gamma_ratio otherwise.
    """
    if k < 0:
        raise DomainError(f"pochhammer requires k >= 0, got {k}")
    if k == 0:
        return 1.0
    if k <= 64 or z <= 0.0:
        acc = 1.0
        for j in range(k):
            factor = z + j
            if factor == 0.0:
                raise DomainError(f"pochhammer hit a zero factor at z + {j} = 0")
            acc *= factor
        return acc
    return gamma_ratio(z + k, z)


def eigenvalue_lambda(n: int, s: SExponent | float) -> float:
    """Eigenvalue Gamma(2s+n+1)/n! of the weighted fractional Laplacian.

    Interval-independent: the affine change of variables that maps a
    general interval to the reference one leaves the operator invariant.
    """
    sv = s_value(s)
    if n < 0:
        raise DomainError(f"mode index must be >= 0, got {n}")
    return gamma_ratio(2.0 * sv + n + 1.0, n + 1.0)


def eigenvalue_mu(n: int, s: SExponent | float) -> float:
    """Eigenvalue -Gamma(2s+n-1)/n! of the weighted single-layer operator.

    The pair (n=0, s <= 1/2) hits the Gamma pole; at s = 1/2 the
    operator value is the logarithmic constant LOG_KERNEL_Q00, which is
    deliberately not reachable through this function.
    """
    sv = s_value(s)
    if n < 0:
        raise DomainError(f"mode index must be >= 0, got {n}")
    if n == 0 and sv <= 0.5:
        raise DomainError(
            "mu_0 is undefined for s <= 1/2 (Gamma pole); at s = 1/2 use "
            "the logarithmic constant LOG_KERNEL_Q00 instead"
        )
    return -gamma_ratio(2.0 * sv + n - 1.0, n + 1.0)


def gegenbauer_norm_h(j: int, s: SExponent | float) -> float:
    """Weighted L2 norm h_j of the Gegenbauer polynomial C_j^(s+1/2).

    h_j^2 = 2^(-2s) pi / Gamma(s+1/2)^2 * Gamma(j+2s+1) / (j! (j+s+1/2)).

    Accepts any weight exponent s > -1/2 (plain float); SExponent inputs
    are restricted to (0,1) as usual.  Exponents above the fractional
    range arise from derivative expansions.
    """
    if isinstance(s, SExponent):
        sv = s.s
    else:
        sv = float(s)
        if sv <= -0.5:
            raise DomainError(f"weight exponent must exceed -1/2, got {sv}")
    if j < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {j}")
    g = math.gamma(sv + 0.5)
    h2 = (
        2.0 ** (-2.0 * sv)
        * math.pi
        / (g * g)
        * gamma_ratio(j + 2.0 * sv + 1.0, j + 1.0)
        / (j + sv + 0.5)
    )
    return math.sqrt(h2)
