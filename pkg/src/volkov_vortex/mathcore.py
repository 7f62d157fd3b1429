"""Foundational numerics: Bessel functions of integer order, Dirac-matrix algebra,
adaptive Simpson quadrature and a classical RK4 step.

Conventions
-----------
* Natural units, metric signature (+, -, -, -).
* Four-vectors are length-4 float arrays ``(a_t, a_x, a_y, a_z)`` with upper indices.
* Bispinors are length-4 complex arrays in the Dirac (standard) representation,
  upper pair first.

The Bessel kernel is vectorised over the argument and is the single code path for
both scalar and batched evaluation, so a value never depends on which batch it
was computed in.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

MAX_ORDER = 300
MAX_ARG = 1.0e4

# Power series is used below this argument, Miller backward recurrence above.
SERIES_CUTOFF = 8.0
_SERIES_TERMS = 48
_RESCALE_AT = 1.0e200
_SEED = 1.0e-30

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


class DomainError(ValueError):
    """Argument outside the supported domain of a numerical routine."""


class ConvergenceError(RuntimeError):
    """An iterative routine did not reach its tolerance."""


# --------------------------------------------------------------------------
# Bessel functions
# --------------------------------------------------------------------------

def _check_bessel_args(max_order: int, x: np.ndarray) -> None:
    if max_order > MAX_ORDER:
        raise DomainError(f"|order| = {max_order} exceeds {MAX_ORDER}")
    if not np.all(np.isfinite(x)):
        raise DomainError("Bessel argument must be finite")
    if x.size and np.max(np.abs(x)) > MAX_ARG:
        raise DomainError(f"|x| exceeds {MAX_ARG:g}")


def _series_block(x: np.ndarray, top: int) -> np.ndarray:
    """J_0..J_top by the ascending power series; 0 <= x < SERIES_CUTOFF."""
    half = 0.5 * x
    q = -half * half
    out = np.empty((top + 1, x.size))
    lead = np.ones_like(x)
    for nu in range(top + 1):
        if nu:
            lead = lead * half / nu
        term = lead
        total = lead
        # fixed term count keeps each element independent of its batch
        for k in range(1, _SERIES_TERMS):
            term = term * q / (k * (k + nu))
            total = total + term
        out[nu] = total
    return out


def _miller_start(x: np.ndarray) -> np.ndarray:
    # depends on x alone, never on the requested orders
    base = np.maximum(np.ceil(x), MAX_ORDER) + 60.0 + np.ceil(8.0 * np.cbrt(x))
    start = base.astype(np.int64)
    return start + (start % 2)


def _miller_block(x: np.ndarray, top: int) -> np.ndarray:
    """J_0..J_top by backward recurrence normalised with J_0 + 2*sum J_2k = 1."""
    start = _miller_start(x)
    kmax = int(start.max())
    out = np.zeros((top + 1, x.size))
    j_cur = np.zeros_like(x)
    j_next = np.zeros_like(x)
    norm = np.zeros_like(x)
    for k in range(kmax, 0, -1):
        seed = start == k
        if seed.any():
            j_cur = np.where(seed, _SEED, j_cur)
            j_next = np.where(seed, 0.0, j_next)
        if k <= top:
            out[k] = j_cur
        if k % 2 == 0:
            norm = norm + 2.0 * j_cur
        j_prev = (2.0 * k / x) * j_cur - j_next
        big = np.abs(j_prev) > _RESCALE_AT
        if big.any():
            scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            j_prev = j_prev * scale
            j_cur = j_cur * scale
            norm = norm * scale
            out *= scale
        j_next, j_cur = j_cur, j_prev
    out[0] = j_cur
    norm = norm + j_cur
    return out / norm


def bessel_block(top: int, x) -> np.ndarray:
    """Return ``J_0(x) .. J_top(x)`` as an array of shape ``(top + 1,) + x.shape``.

    Negative arguments use ``J_n(-x) = (-1)^n J_n(x)``.
    """
    if top < 0:
        raise DomainError("top order must be non-negative")
    xa = np.asarray(x, dtype=float)
    shape = xa.shape
    flat = xa.ravel()
    _check_bessel_args(top, flat)
    ax = np.abs(flat)
    out = np.zeros((top + 1, flat.size))
    small = ax < SERIES_CUTOFF
    if small.any():
        out[:, small] = _series_block(ax[small], top)
    if (~small).any():
        out[:, ~small] = _miller_block(ax[~small], top)
    neg = flat < 0
    if neg.any():
        out[1::2, neg] = -out[1::2, neg]
    return out.reshape((top + 1,) + shape)


def bessel_table(orders: Sequence[int], x) -> np.ndarray:
    """``J_n(x)`` for each integer order in ``orders``; shape ``(len(orders),) + x.shape``."""
    orders = [int(n) for n in orders]
    top = max(abs(n) for n in orders)
    block = bessel_block(top, x)
    rows = []
    for n in orders:
        row = block[abs(n)]
        if n < 0 and n % 2:
            row = -row
        rows.append(row)
    return np.stack(rows)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind ``J_n(x)`` for integer ``n``.

    Accurate to about 1e-13 absolute for ``|x| <= 50``. Negative orders go through
    ``J_{-n}(x) = (-1)^n J_n(x)``.
    """
    n = int(n)
    if abs(n) > MAX_ORDER:
        raise DomainError(f"|order| = {abs(n)} exceeds {MAX_ORDER}")
    return float(bessel_table([n], np.array([float(x)]))[0, 0])


def bessel_j_window(center: int, half_width: int, x: float) -> np.ndarray:
    """``[J_{c-w}(x), ..., J_{c+w}(x)]`` from one backward-recurrence sweep.

    Bitwise identical to calling :func:`bessel_j` per order.
    """
    if half_width < 0:
        raise DomainError("half_width must be non-negative")
    orders = range(center - half_width, center + half_width + 1)
    return bessel_table(orders, np.array([float(x)]))[:, 0]


# --------------------------------------------------------------------------
# Minkowski vectors and gamma matrices
# --------------------------------------------------------------------------

def four_vector(t: float, x: float, y: float, z: float) -> np.ndarray:
    return np.array([t, x, y, z], dtype=float)


def mdot(a, b) -> float:
    """Minkowski product a.b with signature (+, -, -, -)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]


IDENTITY = np.eye(4, dtype=complex)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _dirac_gammas() -> tuple[np.ndarray, ...]:
    zero = np.zeros((2, 2), dtype=complex)
    one = np.eye(2, dtype=complex)
    g0 = np.block([[one, zero], [zero, -one]])
    spatial = tuple(np.block([[zero, s], [-s, zero]]) for s in PAULI)
    return (g0,) + spatial


GAMMA = _dirac_gammas()


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def slash(a) -> np.ndarray:
    """Feynman slash ``gamma^mu a_mu`` of a contravariant four-vector."""
    a = np.asarray(a, dtype=float)
    return a[0] * GAMMA[0] - a[1] * GAMMA[1] - a[2] * GAMMA[2] - a[3] * GAMMA[3]


# --------------------------------------------------------------------------
# Quadrature and ODE stepping
# --------------------------------------------------------------------------

QUAD_MAX_DEPTH = 40


# irrational break point: periodic integrands cannot alias the first Simpson samples
_QUAD_SPLIT = 0.3819660112501051


def quadrature(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> float:
    """Adaptive Simpson integral of ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    The interval is first cut at the golden-section point so that the opening
    samples of a periodic integrand are never all equal by symmetry (an aligned
    five-point stencil on ``cos^2`` over ``[0, 4 pi]`` reports zero error).
    Raises :class:`ConvergenceError` if an interval needs more than 40 bisections.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if a == b:
        return 0.0
    c = a + _QUAD_SPLIT * (b - a)
    return _panel(f, a, c, _QUAD_SPLIT * tol) + _panel(f, c, b, (1.0 - _QUAD_SPLIT) * tol)


def _panel(f, a, b, tol):
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _simpson(f, a, b, fa, fm, fb, whole, tol, QUAD_MAX_DEPTH)


def _simpson(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ConvergenceError(f"adaptive Simpson failed to converge near x = {m!r}")
    return (_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + _simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))


def rk4_step(state, deriv: Callable[[float, np.ndarray], np.ndarray], t: float, h: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step of size ``h``."""
    if not h > 0:
        raise DomainError("step size must be positive")
    y = np.asarray(state, dtype=float)
    k1 = deriv(t, y)
    k2 = deriv(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = deriv(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = deriv(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
