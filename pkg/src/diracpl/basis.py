"""Spinor basis construction for the power-law radial Dirac problem.

The potential is the odd component W(r) = A / r^mu; with beta = 1 - mu and
x = (omega r)^beta the upper basis component is

    phi_n^+(r) = a_n x^alpha e^{-x/2} L_n^nu(x),
    a_n = sqrt(omega |beta| Gamma(n+1) / Gamma(n+nu+1)),

and the lower component follows from the first-order (kinetic-balance)
operator.  Three admissible parameter families exist, selected by the signs
of beta*kappa and the value of kappa:

  rep a:  beta*kappa > 0, kappa != -1:   gamma = kappa/beta,
          alpha = (kappa+1)/beta, nu = (2 kappa + 1)/beta
  rep b:  beta*kappa < 0:                gamma = kappa/beta,
          alpha = -kappa/beta,  nu = -(2 kappa + 1)/beta
  rep c:  rho = sign(beta A) = +-1, omega = |2A/beta|^{1/beta},
          nu = 2 alpha - 1 - 1/beta (alpha free within bounds)

Matching the first-order operator to the Dirac equation at rest-mass energy
fixes tau = 1/4, gamma = kappa/beta and rho = 2A/(beta omega^beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .forms import LaguerreForm
from .orthopoly import sqrt_gamma_ratio
from .quadrature import RadialMeasure

__all__ = [
    "Rep",
    "PhysicalParams",
    "BasisParams",
    "select_representation",
    "phi_plus",
    "phi_minus",
    "kinetic_balance_apply",
    "phi_plus_form",
    "phi_minus_form",
    "kinetic_balance_form",
]

_EXCLUDED_MU = {
    0.0: "mu = 0 gives a constant odd potential, a Coulomb-type problem "
         "(the strength plays Z/kappa); it is excluded here",
    1.0: "mu = 1 is the free-particle case (A can be absorbed into kappa); "
         "it is excluded here",
    -1.0: "mu = -1 gives a linear odd potential, the relativistic-oscillator "
          "case; it is excluded here",
}


class Rep(str, Enum):
    A = "a"
    B = "b"
    C = "c"


@dataclass(frozen=True)
class PhysicalParams:
    """Inputs defining the problem: W(r) = A/r^mu, spin-orbit kappa, Compton
    length lam, and the energy sign eps (in rest-mass units)."""

    A: float
    mu: float
    kappa: int
    lam: float = 1.0
    eps: int = 1

    def __post_init__(self):
        if self.A == 0.0:
            raise ValueError("potential strength A must be nonzero")
        if float(self.mu) in _EXCLUDED_MU:
            raise ValueError(_EXCLUDED_MU[float(self.mu)])
        if not isinstance(self.kappa, (int, np.integer)) or self.kappa == 0:
            raise ValueError(
                f"kappa must be a nonzero integer (kappa = +-(j+1/2)), got {self.kappa!r}"
            )
        if self.lam <= 0.0:
            raise ValueError("Compton length lam must be positive")
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1 (rest-mass units)")

    @property
    def beta(self) -> float:
        return 1.0 - self.mu


@dataclass(frozen=True)
class BasisParams:
    """Constants fixing one spinor basis family, including the map x = (omega r)^beta."""

    rep: Rep
    beta: float
    omega: float
    alpha: float
    nu: float
    gamma: float
    rho: float
    tau: float
    lam: float

    @property
    def measure(self) -> RadialMeasure:
        return RadialMeasure(beta=self.beta, omega=self.omega)

    def norm_const(self, n: int) -> float:
        """a_n = sqrt(omega |beta| Gamma(n+1) / Gamma(n+nu+1))."""
        return math.sqrt(self.omega * abs(self.beta)) * sqrt_gamma_ratio(n + 1.0, n + self.nu + 1.0)

    def x_of_r(self, r):
        return self.measure.x_of_r(r)


def _table_alpha_bound(rep: Rep, beta: float) -> float:
    # Square-integrability / boundary-condition bounds on alpha per beta range.
    if beta < 0.0:
        return -1.0 / (2.0 * beta)
    if rep is Rep.B:
        return (-1.0 + 1.0 / beta) if beta < 1.0 else 0.0
    return 1.0 / beta


def _validate_basis(basis: BasisParams) -> None:
    rep, beta, alpha, nu = basis.rep, basis.beta, basis.alpha, basis.nu
    if nu <= -1.0:
        raise ValueError(f"basis requires nu > -1, got nu={nu}")
    if rep is Rep.A and nu <= 0.0:
        raise ValueError(f"representation a requires nu > 0, got nu={nu}")
    if alpha <= 0.0:
        raise ValueError(f"basis requires alpha > 0, got alpha={alpha}")
    bound = _table_alpha_bound(rep, beta)
    if alpha <= bound:
        raise ValueError(
            f"square integrability requires alpha > {bound} for representation "
            f"{rep.value} with beta={beta}, got alpha={alpha}"
        )


def select_representation(phys: PhysicalParams, omega: float | None = None,
                          alpha: float | None = None, rep: Rep | str | None = None,
                          allow_unit_rho: bool = False) -> BasisParams:
    """Choose the basis family from the physics and fix all its constants.

    Defaults: representation a for beta*kappa > 0 with kappa != -1,
    b for beta*kappa < 0, c for the mandatory kappa = -1 sector (and on
    explicit request).  For a/b the scale omega is free and defaults to the
    value giving |rho| = 2; |rho| = 1 exactly is rejected there because the
    recursion degenerates (representation c owns that boundary).
    """
    beta = phys.beta
    kappa = phys.kappa
    bk = beta * kappa

    if rep is not None:
        rep = Rep(rep)
        if rep is Rep.A and not (bk > 0.0 and kappa != -1):
            raise ValueError("representation a requires beta*kappa > 0 and kappa != -1")
        if rep is Rep.B and not bk < 0.0:
            raise ValueError("representation b requires beta*kappa < 0")
    else:
        if bk > 0.0:
            rep = Rep.C if kappa == -1 else Rep.A
        else:
            rep = Rep.B

    if rep is Rep.C:
        if omega is not None:
            raise ValueError(
                "omega is fixed to |2A/beta|^(1/beta) in representation c"
            )
        omega = abs(2.0 * phys.A / beta) ** (1.0 / beta)
        rho = math.copysign(1.0, beta * phys.A)
        if alpha is None:
            alpha = 1.0 + max(1.0 / beta, -1.0 / (2.0 * beta))
        nu = 2.0 * alpha - 1.0 - 1.0 / beta
    else:
        if alpha is not None:
            raise ValueError(
                f"alpha is fixed by kappa and beta in representation {rep.value}"
            )
        if omega is None:
            omega = abs(phys.A / beta) ** (1.0 / beta)  # makes |rho| = 2
        elif omega <= 0.0:
            raise ValueError("omega must be positive")
        rho = 2.0 * phys.A / (beta * omega ** beta)
        if rho * rho == 1.0 and not allow_unit_rho:
            raise ValueError(
                "|rho| = 1 degenerates the three-term recursion in representations "
                "a/b; use representation c (rep='c') or a different omega"
            )
        if rep is Rep.A:
            alpha = (kappa + 1.0) / beta
            nu = (2.0 * kappa + 1.0) / beta
        else:
            alpha = -kappa / beta
            nu = -(2.0 * kappa + 1.0) / beta

    basis = BasisParams(rep=rep, beta=beta, omega=omega, alpha=alpha, nu=nu,
                        gamma=kappa / beta, rho=rho, tau=0.25, lam=phys.lam)
    _validate_basis(basis)
    return basis


def phi_plus_form(basis: BasisParams, n: int) -> LaguerreForm:
    """phi_n^+ = a_n x^alpha e^{-x/2} L_n^nu(x) as a Laguerre form."""
    if n < 0:
        raise ValueError("basis index must be non-negative")
    return LaguerreForm.single(basis.norm_const(n), basis.alpha, n, basis.nu)


def phi_minus_form(basis: BasisParams, n: int) -> LaguerreForm:
    """Lower spinor component of basis element n, in the active representation.

    All three closed forms are algebraically equal to the kinetic-balance
    operator acting on phi_n^+; each is written with the Laguerre parameter
    that makes its own representation's matrix elements band-limited.
    """
    if n < 0:
        raise ValueError("basis index must be non-negative")
    a, nu, g, rho = basis.alpha, basis.nu, basis.gamma, basis.rho
    pre = basis.lam * basis.omega * basis.tau * basis.beta * basis.norm_const(n)
    p = a - 1.0 / basis.beta
    if basis.rep is Rep.A:
        entries = [
            (2.0 * (g + a - nu), p, n, nu),
            ((1.0 + rho) * (n + nu), p, n, nu - 1.0),
            ((1.0 - rho) * (n + 1.0), p, n + 1, nu - 1.0),
        ]
    elif basis.rep is Rep.B:
        entries = [
            (2.0 * (g + a), p, n, nu),
            (-(1.0 - rho), p + 1.0, n, nu + 1.0),
            (-(1.0 + rho), p + 1.0, n - 1, nu + 1.0),
        ]
    else:
        entries = [
            (2.0 * (g + a - (nu + 1.0) / 2.0) + 2.0 * rho * (n + (nu + 1.0) / 2.0), p, n, nu),
            (-(1.0 + rho) * (n + nu), p, n - 1, nu),
            ((1.0 - rho) * (n + 1.0), p, n + 1, nu),
        ]
    return LaguerreForm.build(entries).scaled(pre)


def kinetic_balance_form(basis: BasisParams, n: int) -> LaguerreForm:
    """The first-order operator route to the lower component:

    phi_n^- = (2 lam omega tau beta / x^{1/beta}) (gamma + rho x/2 + x d/dx) phi_n^+,

    built with the analytic Laguerre derivative.  Under the rest-mass-energy
    parameter assignments this is the oracle for phi_minus_form.
    """
    fp = phi_plus_form(basis, n)
    inner = LaguerreForm.build([]) + fp.scaled(basis.gamma) \
        + fp.shifted(1.0).scaled(basis.rho / 2.0) + fp.dx().shifted(1.0)
    pre = 2.0 * basis.lam * basis.omega * basis.tau * basis.beta
    return inner.shifted(-1.0 / basis.beta).scaled(pre)


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radial coordinate must be positive")
    return r


def phi_plus(basis: BasisParams, n: int, r):
    """Upper basis component at radius r (scalar or array)."""
    val = phi_plus_form(basis, n).eval(basis.x_of_r(_check_r(r)))
    return float(val) if np.ndim(r) == 0 else val


def phi_minus(basis: BasisParams, n: int, r):
    """Lower basis component at radius r (scalar or array)."""
    val = phi_minus_form(basis, n).eval(basis.x_of_r(_check_r(r)))
    return float(val) if np.ndim(r) == 0 else val


def kinetic_balance_apply(basis: BasisParams, n: int, r):
    """First-order-operator route to the lower component, at radius r."""
    val = kinetic_balance_form(basis, n).eval(basis.x_of_r(_check_r(r)))
    return float(val) if np.ndim(r) == 0 else val
