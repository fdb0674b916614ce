"""Special functions: Laguerre polynomials, oscillator eigenfunctions and
overlaps of displaced number states.

Positions are dimensionless, ``qt = sqrt(m*omega0/(2*hbar)) * q``, so that a
coherent state ``|alpha>`` with real ``alpha`` has its density peak at
``qt = alpha``.
"""

import math

import numpy as np

# rescale the Hermite recurrence before values leave double range
_RESCALE = 1e150


def laguerre(n, x):
    """Laguerre polynomial ``L_n(x)`` by upward three-term recurrence.

    Accepts scalar or array ``x``; returns the same shape.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    return genlaguerre(n, 0, x)


def genlaguerre(n, a, x):
    """Associated Laguerre polynomial ``L_n^(a)(x)`` for integer ``a >= 0``."""
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def ho_wavefunctions(n_max, qt):
    """Rows ``0..n_max-1`` of oscillator eigenfunctions sampled at ``qt``.

    Normalized so that ``int psi_n(qt)**2 dqt = 1``. The normalized Hermite
    recurrence runs on mantissas with a per-point log scale, so neither the
    Gaussian factor nor ``2**n n!`` can underflow or overflow.
    """
    qt = np.atleast_1d(np.asarray(qt, dtype=float))
    out = np.zeros((n_max, qt.size))
    if n_max == 0:
        return out
    x = math.sqrt(2.0) * qt
    log_scale = 0.25 * math.log(2.0 / math.pi) - qt**2
    prev = np.zeros_like(qt)
    cur = np.ones_like(qt)
    out[0] = np.exp(log_scale)
    for k in range(n_max - 1):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        big = np.abs(cur) > _RESCALE
        if big.any():
            cur[big] /= _RESCALE
            prev[big] /= _RESCALE
            log_scale[big] += math.log(_RESCALE)
        with np.errstate(under="ignore"):
            out[k + 1] = cur * np.exp(log_scale)
    return out


def ho_wavefunction(n, qt):
    """Single oscillator eigenfunction ``psi_n(qt)``; ground state is
    ``(2/pi)**0.25 * exp(-qt**2)``."""
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    row = ho_wavefunctions(n + 1, qt)[n]
    return row if np.ndim(qt) else float(row[0])


def displaced_overlap(N, alpha):
    """``<-alpha, N | alpha, N> = exp(-2 alpha^2) L_N(4 alpha^2)``."""
    return math.exp(-2.0 * alpha**2) * laguerre(N, 4.0 * alpha**2)


def displaced_cross_overlap(M, N, alpha):
    """``<-alpha, N | alpha, M>`` for real ``alpha``.

    Equals the Fock matrix element ``<N| D(2 alpha) |M>``; the factorial
    ratio is evaluated through log-gamma.
    """
    if M < 0 or N < 0:
        raise ValueError("Fock indices must be non-negative")
    beta = 2.0 * alpha
    lo, hi = min(M, N), max(M, N)
    d = hi - lo
    if beta == 0.0:
        return 1.0 if d == 0 else 0.0
    # <N|D(beta)|M> carries beta^d when N > M and (-beta)^d when N < M
    base = beta if N >= M else -beta
    sign = 1.0 if (base > 0 or d % 2 == 0) else -1.0
    log_mag = 0.5 * (math.lgamma(lo + 1) - math.lgamma(hi + 1)) + d * math.log(abs(beta)) - 0.5 * beta**2
    return sign * math.exp(log_mag) * genlaguerre(lo, d, beta**2)
