"""Legendre polynomials P_n and spherical Bessel functions j_n.

Evaluation strategies:
  * P_n by the three-term recurrence
        (n+1) P_{n+1}(t) = (2n+1) t P_n(t) - n P_{n-1}(t),  P_0 = 1, P_1 = t.
  * j_n in three regimes: ascending series near the origin, upward
    recurrence when |z| is well above the order, and downward (Miller)
    recurrence with a posteriori normalization otherwise, where upward
    recurrence loses all accuracy.
  * Negative arguments of j_n go through the parity rule
    j_n(-z) = (-1)^n j_n(z).

Also provides the Poisson-integral evaluation of the half-integer Bessel
function J_{n+1/2}, used as an independent cross-check on j_n.
"""

import math

import numpy as np

from .errors import DomainError, InvalidOrderError

MAX_ORDER = 128

_SERIES_CUTOFF = 0.5   # |z| below this: ascending series
_MILLER_EXTRA = 34     # extra downward-recurrence orders before normalization
_RESCALE_LIMIT = 1e250


def _check_order(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidOrderError(f"order must be an integer, got {n!r}")
    if n < 0 or n > MAX_ORDER:
        raise InvalidOrderError(f"order {n} outside supported range [0, {MAX_ORDER}]")
    return int(n)


def legendre_all(nmax, t):
    """All Legendre polynomials P_0(t) .. P_nmax(t) in one recurrence pass.

    t may be a scalar or an array with entries in [-1, 1]; the result has
    shape (nmax+1,) + shape(t).
    """
    nmax = _check_order(nmax)
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise DomainError("legendre_all: |t| > 1 is outside the domain of P_n")
    out = np.empty((nmax + 1,) + t.shape, dtype=float)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = t
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + 1) * t * out[n] - n * out[n - 1]) / (n + 1)
    return out


def legendre_p(n, t):
    """P_n(t) for |t| <= 1."""
    n = _check_order(n)
    t = float(t)
    if abs(t) > 1.0:
        raise DomainError(f"legendre_p: t = {t} outside [-1, 1]")
    return float(legendre_all(n, t)[n])


def _jn_series(nmax, z):
    """Ascending series for j_n, |z| small.

    j_n(z) = z^n / (2n+1)!! * sum_k (-z^2/2)^k / (k! prod_{m=1..k}(2n+2m+1))
    """
    out = np.empty((nmax + 1,) + z.shape, dtype=float)
    zsq = z * z
    dfact = 1.0  # (2n+1)!!
    zpow = np.ones_like(z)
    for n in range(nmax + 1):
        if n > 0:
            dfact *= 2 * n + 1
            zpow = zpow * z
        term = np.ones_like(z)
        total = np.ones_like(z)
        for k in range(1, 14):
            term = term * (-zsq) / (2.0 * k * (2 * n + 2 * k + 1))
            total += term
        out[n] = zpow / dfact * total
    return out


def _jn_upward(nmax, z):
    """Upward recurrence, stable for |z| above the highest order."""
    out = np.empty((nmax + 1,) + z.shape, dtype=float)
    out[0] = np.sin(z) / z
    if nmax >= 1:
        out[1] = out[0] / z - np.cos(z) / z
    for n in range(1, nmax):
        out[n + 1] = (2 * n + 1) / z * out[n] - out[n - 1]
    return out


def _jn_miller(nmax, z):
    """Downward (Miller) recurrence normalized against j_0 or j_1."""
    start = nmax + _MILLER_EXTRA
    out = np.zeros((nmax + 1,) + z.shape, dtype=float)
    jp = np.zeros_like(z)
    jc = np.full_like(z, 1e-30)
    for n in range(start, -1, -1):
        if n <= nmax:
            out[n] = jc
        jm = (2 * n + 1) / z * jc - jp
        jp, jc = jc, jm
        big = np.abs(jc) > _RESCALE_LIMIT
        if big.any():
            jp = np.where(big, jp * 1e-250, jp)
            jc = np.where(big, jc * 1e-250, jc)
            out[:, big] *= 1e-250
    # jc now holds the unnormalized j_{-1} trial; normalize with whichever
    # of j_0, j_1 is better conditioned at each point
    j0 = np.sin(z) / z
    j1 = j0 / z - np.cos(z) / z
    use0 = np.abs(out[0]) >= np.abs(out[1]) if nmax >= 1 else np.ones(z.shape, bool)
    if nmax >= 1:
        ref = np.where(use0, out[0], out[1])
        tgt = np.where(use0, j0, j1)
    else:
        ref, tgt = out[0], j0
    scale = np.where(ref != 0.0, tgt / np.where(ref != 0.0, ref, 1.0), 0.0)
    return out * scale


def _jn_table(nmax, z):
    """j_0..j_nmax at every point of array z; shape (nmax+1,) + z.shape."""
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise DomainError("spherical_j: argument must be finite")
    flat = z.reshape(-1)
    az = np.abs(flat)
    out = np.empty((nmax + 1, flat.size), dtype=float)
    small = az < _SERIES_CUTOFF
    up = (~small) & (az >= nmax + 2)
    mid = (~small) & (~up)
    if small.any():
        out[:, small] = _jn_series(nmax, az[small])
    if up.any():
        out[:, up] = _jn_upward(nmax, az[up])
    if mid.any():
        out[:, mid] = _jn_miller(nmax, az[mid])
    neg = flat < 0.0
    if neg.any():
        for n in range(1, nmax + 1, 2):
            out[n, neg] = -out[n, neg]
    return out.reshape((nmax + 1,) + z.shape)


def spherical_j_all(nmax, z):
    """j_0(z) .. j_nmax(z) in one stable pass; z a finite real scalar."""
    nmax = _check_order(nmax)
    table = _jn_table(nmax, np.array([float(z)]))
    return table[:, 0].copy()


def spherical_j(n, z):
    """Spherical Bessel function j_n(z) for real z."""
    n = _check_order(n)
    return float(spherical_j_all(n, z)[n])


def gamma_half(twice_x):
    """Gamma(twice_x / 2) for positive integer twice_x.

    Built by the recursion Gamma(x+1) = x Gamma(x) from Gamma(1) = 1 and
    Gamma(1/2) = sqrt(pi); only integer and half-integer arguments occur.
    """
    twice_x = int(twice_x)
    if twice_x <= 0:
        raise DomainError("gamma_half: argument must be positive")
    if twice_x % 2 == 0:
        g, x = 1.0, 1.0
    else:
        g, x = math.sqrt(math.pi), 0.5
    while 2 * x < twice_x:
        g *= x
        x += 1.0
    return g


def half_integer_bessel_via_poisson(n, z, rule):
    """J_{n+1/2}(z) by quadrature of the Poisson integral representation,

        J_nu(z) = (z/2)^nu / (Gamma(nu+1/2) Gamma(1/2))
                  * int_0^pi cos(z cos(theta)) sin(theta)^(2 nu) dtheta

    with nu = n + 1/2, so Gamma(nu+1/2) = Gamma(n+1) = n!.
    """
    n = _check_order(n)
    z = float(z)
    if z <= 0.0:
        raise DomainError("half_integer_bessel_via_poisson: z must be positive")
    nu = n + 0.5
    # map the rule from [-1,1] to [0, pi]
    theta = 0.5 * math.pi * (np.asarray(rule.nodes) + 1.0)
    w = 0.5 * math.pi * np.asarray(rule.weights)
    integral = float(np.sum(w * np.cos(z * np.cos(theta)) * np.sin(theta) ** (2.0 * nu)))
    prefactor = (0.5 * z) ** nu / (gamma_half(2 * n + 2) * gamma_half(1))
    return prefactor * integral
