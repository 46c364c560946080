"""Three-term recursions for the expansion coefficients and their closed forms.

The wave equation projected on the basis gives D_n f_n + B_{n-1} f_{n-1}
+ B_n f_{n+1} = 0.  After the Gamma-ratio rescalings

    g_n = sqrt(Gamma(n+1+nu)/Gamma(n+1)) f_n     (representations a, b)
    h_n = sqrt(Gamma(n+1)/Gamma(n+nu+1)) f_n     (representation c)

the relation matches a hyperbolic Meixner-Pollaczek recurrence (a, b) or a
modified continuous dual Hahn recurrence (c), so the coefficients have closed
forms evaluated by `orthopoly`.  Both routes are implemented; each is the
oracle for the other.

Branch handling for a/b: with sigma_- > 0 (rho^2 > 1) the normalized
coefficients read  2[(n+lam_mp) cosh(theta) + y sinh(theta)] g_n
- (n+2 lam_mp-1) g_{n-1} - (n+1) g_{n+1} = 0, while sigma_- < 0 (rho^2 < 1)
flips the sign of the g_{n-1}, g_{n+1} terms and of the y term; both are the
single sigma-form divided by |sigma_-|, with theta = asinh(2 rho/(rho^2-1))
throughout (for rho^2 < 1 that arcsinh argument is itself negative, which is
exactly what makes the flipped relation hold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import Rep
from .orthopoly import hyp_mp_series, mod_cdh_series, sqrt_gamma_ratio
from .wave_operator import DerivedParams

__all__ = [
    "ThreeTermRecursion",
    "CoefficientSequence",
    "build_recursion",
    "solve_forward",
    "closed_form_sequence",
    "rescale",
    "mp_lambda",
    "cdh_parameters",
]


@dataclass(frozen=True)
class ThreeTermRecursion:
    """Coefficients of a(n) s_n + b(n) s_{n-1} + c(n) s_{n+1} = 0, s_0 = 1."""

    a: Callable[[int], float]
    b: Callable[[int], float]
    c: Callable[[int], float]
    scaling: str  # 'f', 'g' or 'h': which rescaling of the f_n it propagates
    nu: float

    def residual(self, seq: np.ndarray, n: int) -> float:
        prev = seq[n - 1] if n >= 1 else 0.0
        return self.a(n) * seq[n] + self.b(n) * prev + self.c(n) * seq[n + 1]


@dataclass(frozen=True)
class CoefficientSequence:
    """Expansion coefficients in one of the f/g/h scalings."""

    values: np.ndarray
    scaling: str
    nu: float

    def __len__(self) -> int:
        return len(self.values)


def mp_lambda(derived: DerivedParams) -> float:
    """Order parameter of the Meixner-Pollaczek-type closed forms: (nu+1)/2."""
    return (derived.nu + 1.0) / 2.0


def cdh_parameters(derived: DerivedParams) -> tuple[float, float, float, float]:
    """(lam, y, a, b) of the modified continuous dual Hahn closed form.

    lam = a = (nu+1)/2, b = d + (1-nu)/2, y^2 = z (z + rho u / p).
    """
    lam = (derived.nu + 1.0) / 2.0
    ysq = derived.z * (derived.z + derived.rho * derived.u / derived.p)
    if ysq < 0.0:
        raise ValueError(
            "closed form needs z(z + rho u/p) >= 0; outside the rest-mass-energy "
            "assignments the argument may leave the real family"
        )
    return lam, math.sqrt(ysq), lam, derived.d + (1.0 - derived.nu) / 2.0


def build_recursion(rep: Rep, derived: DerivedParams, nu: float,
                    scaling: str | None = None) -> ThreeTermRecursion:
    """The coefficient recursion in its natural scaling (or the raw 'f' one).

    For representations a/b the default is the g-scaled relation normalized by
    |sigma_-| so the printed coefficients carry the branch's sign pattern; for
    c it is the h-scaled relation.  scaling='f' returns the unscaled relation
    (square-root off-diagonal factors), used by the equivalence-chain checks.
    """
    if scaling is None:
        scaling = "h" if rep is Rep.C else "g"

    if rep is Rep.C:
        z, rho, u, p, d = derived.z, derived.rho, derived.u, derived.p, derived.d
        bracket_const = z * (z + rho * u / p) - ((nu + 1.0) / 2.0) ** 2

        def a_fun(n: int) -> float:
            return (n + nu + 1.0) * (n + d + 1.0) + n * (n + d) + bracket_const

        if scaling == "h":
            return ThreeTermRecursion(
                a=a_fun,
                b=lambda n: -n * (n + d),
                c=lambda n: -(n + nu + 1.0) * (n + d + 1.0),
                scaling="h", nu=nu)
        if scaling == "f":
            return ThreeTermRecursion(
                a=a_fun,
                b=lambda n: -(n + d) * math.sqrt(n * (n + nu)),
                c=lambda n: -(n + d + 1.0) * math.sqrt((n + 1.0) * (n + nu + 1.0)),
                scaling="f", nu=nu)
        raise ValueError(f"unsupported scaling {scaling!r} for representation c")

    sp, sm, zeta = derived.sigma_plus, derived.sigma_minus, derived.zeta
    if sm == 0.0:
        raise ValueError(
            "sigma_- = 0 (|rho| = 1): the a/b recursion degenerates; "
            "use representation c"
        )
    lam_mp = (nu + 1.0) / 2.0
    if scaling == "g":
        sgn = math.copysign(1.0, sm)
        return ThreeTermRecursion(
            a=lambda n: 2.0 * ((n + lam_mp) * sp + zeta) / abs(sm),
            b=lambda n: -sgn * (n + nu),
            c=lambda n: -sgn * (n + 1.0),
            scaling="g", nu=nu)
    if scaling == "f":
        return ThreeTermRecursion(
            a=lambda n: (2.0 * n + 1.0 + nu) * sp + 2.0 * zeta,
            b=lambda n: -sm * math.sqrt(n * (n + nu)),
            c=lambda n: -sm * math.sqrt((n + 1.0) * (n + 1.0 + nu)),
            scaling="f", nu=nu)
    raise ValueError(f"unsupported scaling {scaling!r} for representation {rep.value}")


def solve_forward(rec: ThreeTermRecursion, N: int) -> CoefficientSequence:
    """Forward recurrence s_0 = 1, s_{n+1} = -(a(n) s_n + b(n) s_{n-1}) / c(n).

    The overall factor is fixed later by wavefunction normalization."""
    if N < 0:
        raise ValueError("N must be non-negative")
    vals = np.empty(N + 1)
    vals[0] = 1.0
    for n in range(N):
        cn = rec.c(n)
        if cn == 0.0:
            raise ValueError(f"forward recurrence not solvable: c({n}) = 0")
        prev = vals[n - 1] if n >= 1 else 0.0
        vals[n + 1] = -(rec.a(n) * vals[n] + rec.b(n) * prev) / cn
    return CoefficientSequence(values=vals, scaling=rec.scaling, nu=rec.nu)


def closed_form_sequence(rep: Rep, derived: DerivedParams, N: int) -> CoefficientSequence:
    """Coefficients from the orthogonal-polynomial closed forms.

    a/b (g-scaled):  g_n = P_n(y, theta) for rho^2 > 1 and
                     g_n = (-1)^n P_n(-y, theta) for rho^2 < 1,
    with the hyperbolic Meixner-Pollaczek family of order (nu+1)/2 and
    y = (kappa+1/2)/beta - 1/2.

    c (h-scaled):    h_n = modified continuous dual Hahn of order (nu+1)/2
                     with arguments from `cdh_parameters`.

    Values come from the terminating-series evaluators, which stay exact even
    where the coefficient sequence is the decaying (minimal) solution of the
    recursion; upward recurrences lose such solutions to dominant-solution
    contamination, so this path is the reference the forward solver is judged
    against.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if rep is Rep.C:
        lam, yv, a, b = cdh_parameters(derived)
        vals = np.array([mod_cdh_series(n, lam, yv, a, b) for n in range(N + 1)])
        return CoefficientSequence(values=vals, scaling="h", nu=derived.nu)

    if derived.theta is None or derived.y is None:
        raise ValueError(
            "closed forms for representations a/b exist under the rest-mass-energy "
            "assignments with |rho| != 1"
        )
    lam_mp = mp_lambda(derived)
    theta, y = derived.theta, derived.y
    if derived.rho ** 2 > 1.0:
        vals = np.array([hyp_mp_series(n, lam_mp, y, theta) for n in range(N + 1)])
    else:
        vals = np.array([(-1.0) ** n * hyp_mp_series(n, lam_mp, -y, theta)
                         for n in range(N + 1)])
    return CoefficientSequence(values=vals, scaling="g", nu=derived.nu)


def _g_factor(n: int, nu: float) -> float:
    # g_n / f_n; h_n / f_n is its inverse.
    return sqrt_gamma_ratio(n + 1.0 + nu, n + 1.0)


def rescale(seq: CoefficientSequence, target: str, nu: float | None = None) -> CoefficientSequence:
    """Convert between the f, g and h scalings; round trips are exact inverses."""
    if target not in ("f", "g", "h"):
        raise ValueError(f"unknown scaling {target!r}")
    nu = seq.nu if nu is None else nu
    if nu <= -1.0:
        raise ValueError("scaling factors need nu > -1 (positive Gamma arguments)")
    if target == seq.scaling:
        return CoefficientSequence(values=seq.values.copy(), scaling=target, nu=nu)
    factors = np.array([_g_factor(n, nu) for n in range(len(seq.values))])
    to_f = {"f": 1.0, "g": 1.0 / factors, "h": factors}[seq.scaling]
    from_f = {"f": 1.0, "g": factors, "h": 1.0 / factors}[target]
    return CoefficientSequence(values=seq.values * to_f * from_f, scaling=target, nu=nu)
