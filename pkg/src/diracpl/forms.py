"""Closed algebra of Laguerre forms.

A LaguerreForm is a finite sum  sum_i  c_i x^{p_i} e^{-x/2} L_{n_i}^{nu_i}(x).
Every spinor-basis component, every truncated series, and every radial
derivative of these is such a form: the x-derivative maps a form to a form
(via x L_n' = n L_n - (n+nu) L_{n-1}), multiplication by a power of x shifts
p, and d/dr = omega beta x^{1-1/beta} d/dx stays inside the algebra.  This
lets residuals use exact analytic derivatives and lets inner products strip
the e^{-x} envelope before quadrature, so no e^{+x} rescaling ever occurs.

Within one form all powers p_i differ by integers; the fractional base power
is what selects the Gauss-Laguerre weight exponent for exact integration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .orthopoly import laguerre_all
from .quadrature import RadialMeasure, gauss_laguerre

__all__ = ["LaguerreForm", "combine", "integrate_product"]

_Key = tuple[float, int, float]  # (power, order, nu)


@dataclass(frozen=True)
class LaguerreForm:
    """Immutable linear combination of x^p e^{-x/2} L_n^nu(x) terms."""

    terms: dict[_Key, float] = field(default_factory=dict)

    @staticmethod
    def single(coef: float, power: float, order: int, nu: float) -> "LaguerreForm":
        if order < 0 or coef == 0.0:
            return LaguerreForm({})
        return LaguerreForm({(power, order, nu): float(coef)})

    @staticmethod
    def build(entries) -> "LaguerreForm":
        """Form from an iterable of (coef, power, order, nu); drops zero/negative-order terms."""
        terms: dict[_Key, float] = {}
        for coef, power, order, nu in entries:
            if coef == 0.0 or order < 0:
                continue
            key = (float(power), int(order), float(nu))
            terms[key] = terms.get(key, 0.0) + float(coef)
        return LaguerreForm({k: v for k, v in terms.items() if v != 0.0})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_power(self) -> float:
        if self.is_zero:
            raise ValueError("zero form has no base power")
        return min(p for p, _, _ in self.terms)

    @property
    def poly_degree(self) -> int:
        """Degree in x of the polynomial part relative to the base power."""
        if self.is_zero:
            return 0
        base = self.min_power
        return max(n + _int_offset(p - base) for p, n, _ in self.terms)

    def scaled(self, c: float) -> "LaguerreForm":
        if c == 0.0:
            return LaguerreForm({})
        return LaguerreForm({k: c * v for k, v in self.terms.items()})

    def shifted(self, dp: float) -> "LaguerreForm":
        """Multiply by x^dp.

        Accumulates by key: powers that differ by one ulp can land on the
        same float after the shift, and colliding terms must merge, not
        overwrite."""
        return LaguerreForm.build((v, p + dp, n, nu) for (p, n, nu), v in self.terms.items())

    def __add__(self, other: "LaguerreForm") -> "LaguerreForm":
        return combine([(1.0, self), (1.0, other)])

    def dx(self) -> "LaguerreForm":
        """Exact x-derivative; closed under the term algebra."""
        entries = []
        for (p, n, nu), c in self.terms.items():
            entries.append((c * (p + n), p - 1.0, n, nu))
            entries.append((-0.5 * c, p, n, nu))
            if n >= 1:
                entries.append((-c * (n + nu), p - 1.0, n - 1, nu))
        return LaguerreForm.build(entries)

    def d_dr(self, measure: RadialMeasure) -> "LaguerreForm":
        """Exact radial derivative through the chain rule of x = (omega r)^beta."""
        return self.dx().shifted(1.0 - 1.0 / measure.beta).scaled(measure.omega * measure.beta)

    def eval(self, x):
        """Value at x (scalar or array), including the e^{-x/2} envelope."""
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for nu, group in self._by_nu().items():
            nmax = max(n for _, n in group)
            lag = laguerre_all(nmax, nu, x)
            for (p, n), c in group.items():
                total += c * np.power(x, p) * lag[n]
        return total * np.exp(-x / 2.0)

    def eval_r(self, measure: RadialMeasure, r):
        return self.eval(measure.x_of_r(r))

    def eval_stripped(self, x, base_power: float):
        """Polynomial remainder after factoring x^base_power e^{-x/2}.

        Powers must sit at integer offsets from base_power."""
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for nu, group in self._by_nu().items():
            nmax = max(n for _, n in group)
            lag = laguerre_all(nmax, nu, x)
            for (p, n), c in group.items():
                total += c * np.power(x, _int_offset(p - base_power)) * lag[n]
        return total

    def _by_nu(self) -> dict[float, dict[tuple[float, int], float]]:
        groups: dict[float, dict[tuple[float, int], float]] = {}
        for (p, n, nu), c in self.terms.items():
            groups.setdefault(nu, {})[(p, n)] = c
        return groups


def _int_offset(delta: float) -> int:
    k = round(delta)
    if abs(delta - k) > 1e-9:
        raise ValueError(f"power offset {delta} is not an integer")
    return int(k)


def combine(weighted_forms) -> LaguerreForm:
    """Weighted sum of forms, merging identical (power, order, nu) terms."""
    terms: dict[_Key, float] = {}
    for w, form in weighted_forms:
        if w == 0.0:
            continue
        for key, c in form.terms.items():
            terms[key] = terms.get(key, 0.0) + w * c
    return LaguerreForm({k: v for k, v in terms.items() if v != 0.0})


def integrate_product(fa: LaguerreForm, fb: LaguerreForm, measure: RadialMeasure,
                      order: int | None = None, extra_power: float = 0.0) -> float:
    """Exact radial integral of fa(r) * fb(r) * x^extra_power dr on (0, inf).

    The base power of the product fixes the Gauss-Laguerre weight exponent;
    the polynomial remainder is integrated exactly whenever
    2*order - 1 >= deg(fa) + deg(fb).
    """
    if fa.is_zero or fb.is_zero:
        return 0.0
    base = fa.min_power + fb.min_power + extra_power
    nu_rule = base - 1.0 + 1.0 / measure.beta
    if nu_rule <= -1.0:
        raise ValueError(
            f"product envelope x^{base} is not integrable against the radial "
            f"measure (weight exponent {nu_rule} <= -1)"
        )
    degree = fa.poly_degree + fb.poly_degree
    if order is None:
        order = max(8, degree // 2 + 8)
    elif 2 * order - 1 < degree:
        raise ValueError(
            f"quadrature order {order} cannot integrate a degree-{degree} remainder exactly"
        )
    rule = _cached_rule(order, nu_rule)
    x = rule.nodes
    vals = fa.eval_stripped(x, fa.min_power) * fb.eval_stripped(x, fb.min_power)
    return measure.jacobian_prefactor * rule.integrate(vals)


@lru_cache(maxsize=512)
def _cached_rule(order: int, nu: float):
    # Rules are immutable; sharing across product integrals is safe.
    return gauss_laguerre(order, nu)
