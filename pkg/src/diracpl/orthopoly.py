"""Orthogonal polynomials and terminating hypergeometric series.

Five families are used by the solver: generalized Laguerre, Meixner-Pollaczek
(trigonometric), hyperbolic Meixner-Pollaczek, continuous dual Hahn, and the
modified continuous dual Hahn obtained by the imaginary-argument substitution
y -> -iy.  Each family is evaluated two independent ways: a three-term
recurrence (the fast path) and the terminating hypergeometric sum (the oracle
path).  Gamma-function ratios are always computed in log space.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
from scipy.special import loggamma

# Working precision for the terminating-series oracle paths: the sums are
# alternating with severe cancellation for oscillatory families (the value is
# exponentially smaller than individual terms), so they are accumulated in
# extended precision and rounded once at the end.
_ORACLE_DPS = 40

__all__ = [
    "gamma_ratio",
    "sqrt_gamma_ratio",
    "laguerre_eval",
    "laguerre_all",
    "laguerre_series",
    "laguerre_deriv",
    "mp_eval",
    "mp_series",
    "mp_weight",
    "hyp_mp_eval",
    "hyp_mp_series",
    "cdh_eval",
    "cdh_series",
    "cdh_weight",
    "mod_cdh_eval",
    "mod_cdh_series",
]


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) for positive a, b, computed as exp(lnG(a) - lnG(b))."""
    if a <= 0 or b <= 0:
        raise ValueError(f"gamma_ratio requires positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) - math.lgamma(b))


def sqrt_gamma_ratio(a: float, b: float) -> float:
    """sqrt(Gamma(a)/Gamma(b)) for positive a, b, in log space."""
    if a <= 0 or b <= 0:
        raise ValueError(f"sqrt_gamma_ratio requires positive arguments, got ({a}, {b})")
    return math.exp(0.5 * (math.lgamma(a) - math.lgamma(b)))


def _check_laguerre_params(n: int, nu: float) -> None:
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial order must be a non-negative integer, got {n}")
    if nu <= -1:
        raise ValueError(f"Laguerre parameter must satisfy nu > -1, got nu={nu}")


def laguerre_all(n: int, nu: float, x):
    """All generalized Laguerre values L_0^nu(x) .. L_n^nu(x) by upward recurrence.

    x may be a scalar or ndarray; returns shape (n+1,) + shape(x).
    """
    _check_laguerre_params(n, nu)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("Laguerre evaluation requires x >= 0")
    out = np.empty((n + 1,) + x.shape, dtype=float)
    out[0] = 1.0
    if n >= 1:
        out[1] = nu + 1.0 - x
    for k in range(1, n):
        out[k + 1] = ((2 * k + nu + 1.0 - x) * out[k] - (k + nu) * out[k - 1]) / (k + 1.0)
    return out


def laguerre_eval(n: int, nu: float, x):
    """Generalized Laguerre polynomial L_n^nu(x) by upward three-term recurrence."""
    vals = laguerre_all(n, nu, x)
    res = vals[n]
    return float(res) if np.ndim(x) == 0 else res


def laguerre_series(n: int, nu: float, x) -> float:
    """L_n^nu(x) as the terminating confluent series, the oracle for laguerre_eval.

    L_n^nu(x) = [Gamma(n+nu+1) / (Gamma(n+1) Gamma(nu+1))] 1F1(-n; nu+1; x),
    an exact sum of n+1 terms.
    """
    _check_laguerre_params(n, nu)
    x = float(x)
    if x < 0:
        raise ValueError("Laguerre evaluation requires x >= 0")
    with mp.workdps(_ORACLE_DPS):
        term = mp.mpf(1)
        total = mp.mpf(1)
        for k in range(n):
            term *= (-n + k) * mp.mpf(x) / ((mp.mpf(nu) + 1 + k) * (k + 1))
            total += term
        prefac = mp.gamma(n + mp.mpf(nu) + 1) / (mp.gamma(n + 1) * mp.gamma(mp.mpf(nu) + 1))
        return float(prefac * total)


def laguerre_deriv(n: int, nu: float, x) -> float:
    """d/dx L_n^nu(x).

    For x > 0 uses x L_n' = n L_n - (n+nu) L_{n-1}; at x = 0 returns the
    analytic limit -Gamma(n+nu+1)/(Gamma(n) Gamma(nu+2)) of the series
    derivative (the recurrence form divides by x).
    """
    _check_laguerre_params(n, nu)
    x = float(x)
    if x < 0:
        raise ValueError("Laguerre evaluation requires x >= 0")
    if n == 0:
        return 0.0
    if x == 0.0:
        return -gamma_ratio(n + nu + 1.0, nu + 2.0) / gamma_ratio(float(n), 1.0)
    vals = laguerre_all(n, nu, x)
    return (n * vals[n] - (n + nu) * vals[n - 1]) / x


def _check_mp_params(n: int, lam: float) -> None:
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial order must be a non-negative integer, got {n}")
    if lam <= 0:
        raise ValueError(f"Meixner-Pollaczek parameter must satisfy lam > 0, got {lam}")


def mp_eval(n: int, lam: float, y: float, theta: float) -> float:
    """Meixner-Pollaczek polynomial P_n^lam(y, theta) by recurrence.

    Requires lam > 0 and 0 < theta < pi.  Recurrence from P_{-1} = 0, P_0 = 1:
    (n+1) P_{n+1} = 2[(n+lam) cos(theta) + y sin(theta)] P_n - (n+2lam-1) P_{n-1}.
    """
    _check_mp_params(n, lam)
    if not 0.0 < theta < math.pi:
        raise ValueError(
            f"Meixner-Pollaczek requires 0 < theta < pi, got theta={theta}; "
            "use hyp_mp_eval for the hyperbolic continuation"
        )
    c, s = math.cos(theta), math.sin(theta)
    p_prev, p = 0.0, 1.0
    for k in range(n):
        p_next = (2.0 * ((k + lam) * c + y * s) * p - (k + 2.0 * lam - 1.0) * p_prev) / (k + 1.0)
        p_prev, p = p, p_next
    return p


def mp_series(n: int, lam: float, y: float, theta: float) -> float:
    """P_n^lam(y, theta) via the terminating 2F1 form, the oracle for mp_eval.

    P_n = [Gamma(n+2lam)/(Gamma(n+1)Gamma(2lam))] e^{i n theta}
          2F1(-n, lam+iy; 2lam; 1-e^{-2i theta});
    the sum is complex but the value is real (imaginary part is roundoff).
    """
    _check_mp_params(n, lam)
    if not 0.0 < theta < math.pi:
        raise ValueError(f"Meixner-Pollaczek requires 0 < theta < pi, got theta={theta}")
    with mp.workdps(_ORACLE_DPS):
        th = mp.mpf(theta)
        z = 1 - mp.exp(-2j * th)
        b = mp.mpc(lam, y)
        term = mp.mpc(1)
        total = mp.mpc(1)
        for k in range(n):
            term *= (-n + k) * (b + k) * z / ((2 * mp.mpf(lam) + k) * (k + 1))
            total += term
        prefac = mp.gamma(n + 2 * mp.mpf(lam)) / (mp.gamma(n + 1) * mp.gamma(2 * mp.mpf(lam)))
        value = prefac * mp.exp(1j * n * th) * total
        return float(mp.re(value))


def mp_weight(y: float, lam: float, theta: float) -> float:
    """Orthogonality weight of P_n^lam(., theta) on the real line:

    rho(y) = (1/2pi) (2 sin theta)^{2 lam} e^{(2 theta - pi) y} |Gamma(lam + iy)|^2,
    normalized so that <P_n, P_m> = [Gamma(n+2lam)/Gamma(n+1)] delta_nm.
    """
    if not 0.0 < theta < math.pi:
        raise ValueError(f"Meixner-Pollaczek requires 0 < theta < pi, got theta={theta}")
    log_abs_gamma_sq = 2.0 * loggamma(complex(lam, y)).real
    log_w = (
        2.0 * lam * math.log(2.0 * math.sin(theta))
        + (2.0 * theta - math.pi) * y
        + log_abs_gamma_sq
        - math.log(2.0 * math.pi)
    )
    return math.exp(log_w)


def hyp_mp_eval(n: int, lam: float, y: float, theta: float) -> float:
    """Hyperbolic Meixner-Pollaczek polynomial by recurrence.

    The hyperbolic family replaces (cos, sin) with (cosh, sinh) and takes a
    real second argument; theta may be any real number.  Recurrence from
    P_{-1} = 0, P_0 = 1:

    (n+1) P_{n+1} = 2[(n+lam) cosh(theta) + y sinh(theta)] P_n - (n+2lam-1) P_{n-1}.
    """
    _check_mp_params(n, lam)
    c, s = math.cosh(theta), math.sinh(theta)
    p_prev, p = 0.0, 1.0
    for k in range(n):
        p_next = (2.0 * ((k + lam) * c + y * s) * p - (k + 2.0 * lam - 1.0) * p_prev) / (k + 1.0)
        p_prev, p = p, p_next
    return p


def hyp_mp_series(n: int, lam: float, y: float, theta: float) -> float:
    """Hyperbolic Meixner-Pollaczek via the terminating 2F1 form (oracle path):

    P_n = [Gamma(n+2lam)/(Gamma(n+1)Gamma(2lam))] e^{-n theta}
          2F1(-n, lam+y; 2lam; 1-e^{2 theta}).
    """
    _check_mp_params(n, lam)
    with mp.workdps(_ORACLE_DPS):
        z = 1 - mp.exp(2 * mp.mpf(theta))
        term = mp.mpf(1)
        total = mp.mpf(1)
        for k in range(n):
            term *= (-n + k) * (mp.mpf(lam) + y + k) * z / ((2 * mp.mpf(lam) + k) * (k + 1))
            total += term
        prefac = mp.gamma(n + 2 * mp.mpf(lam)) / (mp.gamma(n + 1) * mp.gamma(2 * mp.mpf(lam)))
        return float(prefac * mp.exp(-n * mp.mpf(theta)) * total)


def _check_cdh_params(n: int, lam: float, a: float, b: float) -> None:
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial order must be a non-negative integer, got {n}")
    if lam <= 0 or a <= 0 or b <= 0:
        raise ValueError(
            f"continuous dual Hahn requires lam, a, b > 0, got ({lam}, {a}, {b})"
        )


def _cdh_recurrence(n: int, lam: float, ysq: float, a: float, b: float) -> float:
    # Shared recurrence core; ysq may be negative (modified family, y^2 -> -y^2).
    s_prev, s = 0.0, 1.0
    for k in range(n):
        ka, kb = k + lam + a, k + lam + b
        if ka == 0.0 or kb == 0.0:
            raise ValueError(f"recurrence denominator vanished at index {k}")
        diag = ka * kb + k * (k + a + b - 1.0) - lam * lam - ysq
        s_next = (diag * s - k * (k + a + b - 1.0) * s_prev) / (ka * kb)
        s_prev, s = s, s_next
    return s


def _cdh_3f2(n: int, lam: float, ysq: float, a: float, b: float) -> float:
    # 3F2(-n, lam+iy, lam-iy; lam+a, lam+b; 1) with (lam+iy)_k (lam-iy)_k
    # accumulated as the real product prod_j ((lam+j)^2 + y^2); ysq may be
    # negative, which realizes the y -> -iy substitution.
    with mp.workdps(_ORACLE_DPS):
        term = mp.mpf(1)
        total = mp.mpf(1)
        for k in range(n):
            num = (-n + k) * ((mp.mpf(lam) + k) ** 2 + ysq)
            den = (mp.mpf(lam) + a + k) * (mp.mpf(lam) + b + k) * (k + 1)
            if den == 0:
                raise ValueError(f"series denominator Pochhammer vanished at index {k}")
            term *= num / den
            total += term
        return float(total)


def cdh_eval(n: int, lam: float, ysq: float, a: float, b: float) -> float:
    """Continuous dual Hahn polynomial S_n^lam(y; a, b) by recurrence, y^2 >= 0.

    Recurrence from S_0 = 1:
    y^2 S_n = [(n+lam+a)(n+lam+b) + n(n+a+b-1) - lam^2] S_n
              - n(n+a+b-1) S_{n-1} - (n+lam+a)(n+lam+b) S_{n+1}.
    """
    _check_cdh_params(n, lam, a, b)
    if ysq < 0:
        raise ValueError(f"continuous dual Hahn requires y^2 >= 0, got {ysq}; "
                         "use mod_cdh_eval for real-argument continuation")
    return _cdh_recurrence(n, lam, ysq, a, b)


def cdh_series(n: int, lam: float, ysq: float, a: float, b: float) -> float:
    """S_n^lam(y; a, b) = 3F2(-n, lam+iy, lam-iy; lam+a, lam+b; 1), oracle path."""
    _check_cdh_params(n, lam, a, b)
    if ysq < 0:
        raise ValueError(f"continuous dual Hahn requires y^2 >= 0, got {ysq}")
    return _cdh_3f2(n, lam, ysq, a, b)


def cdh_weight(y: float, lam: float, a: float, b: float) -> float:
    """Orthogonality weight of S_n^lam(y; a, b) on the half line y > 0:

    rho(y) = (1/2pi) |Gamma(lam+iy) Gamma(a+iy) Gamma(b+iy)
                      / (Gamma(lam+a) Gamma(lam+b) Gamma(2iy))|^2,
    normalized so <S_n, S_m> = [Gamma(n+1)Gamma(n+a+b) /
    (Gamma(n+lam+a)Gamma(n+lam+b))] delta_nm.
    """
    if y <= 0:
        raise ValueError("weight defined for y > 0")
    log_num = (
        loggamma(complex(lam, y)).real
        + loggamma(complex(a, y)).real
        + loggamma(complex(b, y)).real
    )
    log_den = (
        math.lgamma(lam + a) + math.lgamma(lam + b) + loggamma(complex(0.0, 2.0 * y)).real
    )
    return math.exp(2.0 * (log_num - log_den) - math.log(2.0 * math.pi))


def _check_mod_cdh_params(n: int, lam: float, a: float, b: float) -> None:
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial order must be a non-negative integer, got {n}")
    if lam + a <= 0 or lam + b <= 0:
        raise ValueError(
            "modified continuous dual Hahn requires lam+a > 0 and lam+b > 0, "
            f"got lam+a={lam + a}, lam+b={lam + b}"
        )


def mod_cdh_eval(n: int, lam: float, y: float, a: float, b: float) -> float:
    """Modified continuous dual Hahn polynomial by recurrence.

    The modified family is the y -> -iy continuation of S_n^lam, so it obeys
    the same three-term recurrence with y^2 replaced by -y^2 (the substitution
    maps the squared argument y^2 -> (-iy)^2 = -y^2 and nothing else changes).
    """
    _check_mod_cdh_params(n, lam, a, b)
    return _cdh_recurrence(n, lam, -y * y, a, b)


def mod_cdh_series(n: int, lam: float, y: float, a: float, b: float) -> float:
    """Modified continuous dual Hahn as the terminating real series

    3F2(-n, lam+y, lam-y; lam+a, lam+b; 1),

    the oracle for mod_cdh_eval."""
    _check_mod_cdh_params(n, lam, a, b)
    return _cdh_3f2(n, lam, -y * y, a, b)
