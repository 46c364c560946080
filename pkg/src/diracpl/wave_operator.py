"""Tridiagonal matrix elements of the Dirac wave operator at rest-mass energy.

In the spinor basis psi_n = (phi_n^+, phi_n^-) the operator H - 1 is
symmetric tridiagonal.  Elements are produced two independent ways:

* analytic closed forms per representation, written with

      p = beta (1 - 2 tau),   q = A / omega^beta - beta rho / 2,

  which reduce to p = beta/2, q = 0 under the rest-mass-energy parameter
  assignments (tau = 1/4, gamma = kappa/beta, rho = 2A/(beta omega^beta));

* direct quadrature of

      <psi_n|H-eps|psi_m> = (1-eps) <phi_n^+|phi_m^+>
          - (1+eps-1/tau) <phi_n^-|phi_m^->
          + lam omega { <phi_n^+| x^{-1/beta} [kappa - beta gamma + q x] |phi_m^-> + (n<->m) }.

Each path is the oracle for the other.  This module works at eps = +1 only;
eps = -1 is reached through the energy-reflection mapping in `solution`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisParams, PhysicalParams, Rep, phi_minus_form, phi_plus_form
from .forms import integrate_product

__all__ = [
    "DerivedParams",
    "TridiagonalOperator",
    "derived_params",
    "matrix_element_analytic",
    "matrix_element_numeric",
    "build_operator",
    "overlap_plus",
]

_KB_TOL = 1e-12


@dataclass(frozen=True)
class DerivedParams:
    """Recursion-level constants derived from one basis + physics pair.

    theta and y are the hyperbolic angle and shift entering the a/b-family
    recursions; they are only defined under the rest-mass-energy assignments
    (q = 0) away from the |rho| = 1 boundary, and are None otherwise.
    """

    rep: Rep
    beta: float
    omega: float
    lam: float
    tau: float
    kappa: int
    alpha: float
    nu: float
    gamma: float
    rho: float
    p: float
    q: float
    sigma_plus: float
    sigma_minus: float
    zeta: float
    theta: float | None
    y: float | None
    z: float
    d: float
    u: float

    @property
    def kinetic_balance(self) -> bool:
        """True when the full balanced assignment tau = 1/4, gamma = kappa/beta,
        rho = 2A/(beta omega^beta) is active (equivalently q = 0 with tau, gamma
        at their forced values)."""
        return (abs(self.q) <= _KB_TOL * (abs(self.rho * self.beta) / 2.0 + 1.0)
                and self.tau == 0.25
                and abs(self.gamma - self.kappa / self.beta) <= _KB_TOL * (abs(self.gamma) + 1.0))


def derived_params(basis: BasisParams, phys: PhysicalParams,
                   allow_unit_rho: bool = False) -> DerivedParams:
    """Compute p, q, sigma_+-, zeta, theta, y, z, d, u for the given basis."""
    beta, omega, tau, gamma, rho = basis.beta, basis.omega, basis.tau, basis.gamma, basis.rho
    if tau == 0.5:
        raise ValueError("tau = 1/2 makes p vanish; the recursion reduction needs p != 0")
    p = beta * (1.0 - 2.0 * tau)
    q = phys.A / omega ** beta - beta * rho / 2.0
    c = q / p
    sigma_plus = (rho + c) ** 2 - c * c + 1.0
    sigma_minus = (rho + c) ** 2 - c * c - 1.0
    nut = (2.0 * phys.kappa + 1.0) / beta
    zeta = (nut - 1.0) * (rho + c)

    if basis.rep is not Rep.C and sigma_minus == 0.0 and not allow_unit_rho:
        raise ValueError(
            "sigma_- = 0 (|rho| = 1) divides the recursion in representations a/b; "
            "use representation c for this boundary"
        )

    q_zero = abs(q) <= _KB_TOL * (abs(rho * beta) / 2.0 + 1.0)
    if q_zero:
        # sigma_+- collapse to rho^2 +- 1 whenever q vanishes; p = beta/2 is
        # additionally forced once tau takes its balanced value.
        assert abs(sigma_plus - (rho * rho + 1.0)) <= 1e-12 * (rho * rho + 1.0)
        if tau == 0.25:
            assert abs(p - beta / 2.0) <= 1e-13 * abs(beta)

    # The hyperbolic reduction of the a/b recursions exists whenever q = 0
    # away from the |rho| = 1 boundary.
    theta = y = None
    if q_zero and rho * rho != 1.0:
        theta = math.asinh(2.0 * rho / (rho * rho - 1.0))
        y = (phys.kappa + 0.5) / beta - 0.5

    z = gamma + 1.0 / (2.0 * beta)
    u = rho * (phys.kappa - beta * gamma)
    d = basis.alpha + rho * gamma - (rho + 1.0) / 2.0 + (rho - 1.0) / (2.0 * beta) + u / (2.0 * p)

    return DerivedParams(
        rep=basis.rep, beta=beta, omega=omega, lam=basis.lam, tau=tau,
        kappa=phys.kappa, alpha=basis.alpha, nu=basis.nu, gamma=gamma, rho=rho,
        p=p, q=q, sigma_plus=sigma_plus, sigma_minus=sigma_minus, zeta=zeta,
        theta=theta, y=y, z=z, d=d, u=u,
    )


def matrix_element_analytic(rep: Rep, derived: DerivedParams, n: int, m: int) -> float:
    """Closed-form element <psi_n|H-1|psi_m>; exactly 0 for |n-m| > 1."""
    if n < 0 or m < 0:
        raise ValueError("matrix indices must be non-negative")
    if abs(n - m) > 1:
        return 0.0
    lam, omega, beta, tau = derived.lam, derived.omega, derived.beta, derived.tau
    p, q, rho = derived.p, derived.q, derived.rho
    common = lam * lam * omega * omega * beta * tau
    nut = (2.0 * derived.kappa + 1.0) / beta

    if rep is Rep.A or rep is Rep.B:
        sgn = 1.0 if rep is Rep.A else -1.0
        if n == m:
            return common * ((2.0 * n + 1.0 + sgn * nut) * (p * (rho * rho + 1.0) + 2.0 * q * rho)
                             + 2.0 * (nut - 1.0) * (p * rho + q))
        k = max(n, m)
        return -common * (p * (rho * rho - 1.0) + 2.0 * q * rho) * math.sqrt(k * (k + sgn * nut))

    alpha, gamma, nu, u = derived.alpha, derived.gamma, derived.nu, derived.u
    if n == m:
        s = n + alpha + rho * gamma + (rho - 1.0) / (2.0 * beta)
        t = n + alpha - rho / 2.0 - 1.0 / (2.0 * beta)
        return 4.0 * common * (p * (s * s + t * t - nu * nu / 4.0) + u * s)
    k = max(n, m)
    s = k + alpha + rho * gamma - (rho + 1.0) / 2.0 + (rho - 1.0) / (2.0 * beta)
    return -4.0 * common * (p * s + u / 2.0) * math.sqrt(k * (k + nu))


def overlap_plus(basis: BasisParams, n: int, m: int, order: int | None = None) -> float:
    """<phi_n^+|phi_m^+>; a dense Gram matrix except at the excluded beta = 2."""
    return integrate_product(phi_plus_form(basis, n), phi_plus_form(basis, m),
                             basis.measure, order=order)


def matrix_element_numeric(basis: BasisParams, phys: PhysicalParams, n: int, m: int,
                           order: int | None = None) -> float:
    """<psi_n|H-eps|psi_m> by quadrature of the literal operator expansion."""
    if phys.eps != 1:
        raise ValueError(
            "matrix elements are computed at eps = +1; eps = -1 solutions come "
            "from the energy-reflection mapping in the solution module"
        )
    eps = float(phys.eps)
    beta, omega, lam, tau = basis.beta, basis.omega, basis.lam, basis.tau
    measure = basis.measure
    fp_n, fp_m = phi_plus_form(basis, n), phi_plus_form(basis, m)
    fm_n, fm_m = phi_minus_form(basis, n), phi_minus_form(basis, m)

    total = (1.0 - eps) * integrate_product(fp_n, fp_m, measure, order=order)
    total -= (1.0 + eps - 1.0 / tau) * integrate_product(fm_n, fm_m, measure, order=order)

    c0 = phys.kappa - beta * basis.gamma
    q = phys.A / omega ** beta - beta * basis.rho / 2.0
    cross = 0.0
    if c0 != 0.0:
        cross += c0 * (integrate_product(fp_n, fm_m, measure, order=order, extra_power=-1.0 / beta)
                       + integrate_product(fp_m, fm_n, measure, order=order, extra_power=-1.0 / beta))
    if q != 0.0:
        cross += q * (integrate_product(fp_n, fm_m, measure, order=order, extra_power=1.0 - 1.0 / beta)
                      + integrate_product(fp_m, fm_n, measure, order=order, extra_power=1.0 - 1.0 / beta))
    return total + lam * omega * cross


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal H-1: diag[n] = element (n,n), offdiag[n] = element (n+1,n)."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValueError("offdiag must be one shorter than diag")
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise ValueError("matrix elements must be finite")

    def element(self, n: int, m: int) -> float:
        if abs(n - m) > 1:
            return 0.0
        if n == m:
            return float(self.diag[n])
        return float(self.offdiag[min(n, m)])

    def as_matrix(self) -> np.ndarray:
        size = len(self.diag)
        mat = np.diag(self.diag)
        idx = np.arange(size - 1)
        mat[idx, idx + 1] = self.offdiag
        mat[idx + 1, idx] = self.offdiag
        return mat


def build_operator(rep: Rep, derived: DerivedParams, N: int) -> TridiagonalOperator:
    """Assemble D_0..D_N and B_0..B_{N-1} from the closed forms."""
    if N < 1:
        raise ValueError("operator size N must be >= 1")
    diag = np.array([matrix_element_analytic(rep, derived, n, n) for n in range(N + 1)])
    off = np.array([matrix_element_analytic(rep, derived, n + 1, n) for n in range(N)])
    return TridiagonalOperator(diag=diag, offdiag=off)
