"""Pure-Python kernels. Reference implementation and fallback for ``_ckernels``."""
from __future__ import annotations

import cmath
import math

BACKEND = "python"
EPS = 2.0**-53


def conv(a, b):
    """Product of two integer coefficient lists (lowest degree first)."""
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return out


def horner(coeffs, z):
    """Evaluate a polynomial (lowest degree first) at a complex point."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def initial_guesses(coeffs):
    n = len(coeffs) - 1
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (1.0 / n)
    return [radius * cmath.exp(1j * (2.0 * math.pi * k / n + 0.4)) for k in range(n)]


def aberth(coeffs, roots, tol, maxiter):
    """Aberth-Ehrlich iteration in Gauss-Seidel order.

    Returns ``(roots, iterations, converged, max_correction)``. A root stops
    moving once its relative correction drops below ``tol`` or its value is
    at rounding level, ``|p(z)| <= 8 m u sum |a_k| |z|^k`` with ``u`` the
    unit roundoff, past which corrections are noise.
    """
    roots = list(roots)
    n = len(roots)
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    absc = [abs(c) for c in coeffs]
    noise = 8.0 * len(coeffs) * EPS
    done = [False] * n
    max_corr = math.inf
    for it in range(1, maxiter + 1):
        max_corr = 0.0
        for i in range(n):
            if done[i]:
                continue
            z = roots[i]
            p = horner(coeffs, z)
            if abs(p) <= noise * horner(absc, abs(z)).real:
                done[i] = True
                continue
            dp = horner(deriv, z)
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z - roots[j]
                    if diff != 0:
                        s += 1.0 / diff
            if dp == 0:
                w = p / (1e-300 + abs(p)) * 1e-3
            else:
                ratio = p / dp
                w = ratio / (1.0 - ratio * s)
            roots[i] = z - w
            rel = abs(w) / max(1.0, abs(z))
            if rel < tol:
                done[i] = True
            if rel > max_corr:
                max_corr = rel
        if all(done):
            return roots, it, True, max_corr
    return roots, maxiter, False, max_corr
