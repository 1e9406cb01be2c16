"""Spherical Bessel functions and spherical harmonics by recurrence.

``spherical_jn`` uses Miller's downward recurrence normalised against the
closed forms of j_0 and j_1, ``spherical_yn`` uses the (stable) upward
recurrence. ``spherical_harmonic`` uses the standard three-term recurrence
for associated Legendre functions.
"""

import math

import numpy as np

_RESCALE_AT = 1e200


def _j0_j1(x):
    # closed forms, with a series near the origin where j1 cancels
    s, c = np.sin(x), np.cos(x)
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    j0 = np.where(small, 1 - x**2 / 6 + x**4 / 120, s / xs)
    j1 = np.where(small, x / 3 - x**3 / 30, s / xs**2 - c / xs)
    return j0, j1


def _miller(l, x):
    """Return j_0..j_{l+1} at positive ``x`` (shape (l+2,) + x.shape)."""
    top = l + 2 + int(math.ceil(float(np.max(x)))) + 32 + int(math.sqrt(40.0 * (l + 2)))
    out = np.zeros((l + 2,) + x.shape)
    f_next = np.zeros_like(x)
    f_cur = np.full_like(x, 1e-30)
    for n in range(top, 0, -1):
        if n <= l + 1:
            out[n] = f_cur
        f_prev = (2 * n + 1) / x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        big = np.abs(f_cur) > _RESCALE_AT
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            f_cur = f_cur * scale
            f_next = f_next * scale
            out *= scale
    out[0] = f_cur
    j0, j1 = _j0_j1(x)
    use_j0 = np.abs(j0) >= np.abs(j1)
    norm = np.where(use_j0, j0 / np.where(use_j0, out[0], 1.0), j1 / np.where(use_j0, 1.0, out[1]))
    return out * norm


def spherical_jn(l, x, derivative=False):
    """Regular spherical Bessel function j_l(x) (or its derivative).

    Parameters
    ----------
    l : int
        Order, ``l >= 0``.
    x : float or array_like
        Non-negative argument.
    derivative : bool
        Return ``j_l'(x)`` instead of ``j_l(x)``.
    """
    if l < 0:
        raise ValueError(f"order must be non-negative, got {l}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("spherical_jn is implemented for x >= 0 only")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    zero = x == 0
    xp = np.where(zero, 1.0, x)
    table = _miller(l, xp)
    if derivative:
        if l == 0:
            val = -table[1]
        else:
            val = table[l - 1] - (l + 1) / xp * table[l]
        val = np.where(zero, 1.0 / 3.0 if l == 1 else 0.0, val)
    else:
        val = np.where(zero, 1.0 if l == 0 else 0.0, table[l])
    return val[0] if scalar else val


def spherical_yn(l, x, derivative=False):
    """Irregular spherical Bessel function y_l(x) for ``x > 0``."""
    if l < 0:
        raise ValueError(f"order must be non-negative, got {l}")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("spherical_yn is singular at x <= 0")
    s, c = np.sin(x), np.cos(x)
    y_prev = -c / x
    y_cur = -c / x**2 - s / x
    if l == 0:
        return -y_cur if derivative else y_prev
    for n in range(1, l):
        y_prev, y_cur = y_cur, (2 * n + 1) / x * y_cur - y_prev
    if derivative:
        return y_prev - (l + 1) / x * y_cur
    return y_cur


def _legendre_p(l, m, x):
    # associated Legendre P_l^m(x), m >= 0, Condon-Shortley phase included
    x = np.asarray(x, dtype=float)
    pmm = np.ones_like(x)
    if m > 0:
        somx2 = np.sqrt((1 - x) * (1 + x))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * somx2
            fact += 2.0
    if l == m:
        return pmm
    pmmp1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pmmp1
    for ll in range(m + 2, l + 1):
        pll = ((2 * ll - 1) * x * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pmmp1


def spherical_harmonic(l, m, theta, phi):
    """Condon-Shortley spherical harmonic Y_lm at polar angle ``theta``."""
    if l < 0 or abs(m) > l:
        raise ValueError(f"need |m| <= l, got l={l}, m={m}")
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    y = norm * _legendre_p(l, am, np.cos(theta)) * np.exp(1j * am * np.asarray(phi))
    if m < 0:
        y = (-1) ** am * np.conj(y)
    return y


def reflection_harmonic(l, m, theta, phi):
    """Spherical harmonic with phases chosen so that Y~_{l,-m} = conj(Y~_{l,m}).

    Equals Y_lm for ``m >= 0`` and conj(Y_{l,|m|}) for ``m < 0``.
    """
    if m >= 0:
        return spherical_harmonic(l, m, theta, phi)
    return np.conj(spherical_harmonic(l, -m, theta, phi))
