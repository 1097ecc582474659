"""Dense univariate polynomial arithmetic over the complex numbers.

Coefficients are stored low-to-high (index = power). Arithmetic is generic:
entries may be ints, floats, complex, or ``fractions.Fraction`` (the exact
mode used by tests to certify the floating path). Root finding is always
performed in double-precision complex.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import RootFindingError


def _is_inexact(values) -> bool:
    return any(isinstance(v, (float, complex, np.floating, np.complexfloating)) for v in values)


class Poly:
    """A dense polynomial; trailing zeros are permitted but ignored by degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        c = list(coeffs)
        if not c:
            c = [0]
        self.c = c

    @property
    def degree(self) -> int:
        for i in range(len(self.c) - 1, -1, -1):
            if self.c[i] != 0:
                return i
        return 0

    def coeff(self, i: int):
        return self.c[i] if i < len(self.c) else 0

    def trimmed(self) -> "Poly":
        return Poly(self.c[: self.degree + 1])

    def __call__(self, z):
        acc = 0
        for a in reversed(self.c):
            acc = acc * z + a
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return all(self.coeff(i) == other.coeff(i) for i in range(n))

    def __repr__(self):
        return f"Poly({self.c!r})"


@dataclass
class LogSeries:
    """Truncated Taylor series of log P at 0: log P(0) + sum L_j z^j."""

    log_p0: complex
    coeffs: list
    order: int


def peval(p: Poly, z):
    """Horner evaluation of p at z."""
    return p(z)


def log_series(p: Poly, m: int) -> LogSeries:
    """Order-m log series of p around 0 via the Newton-type recurrence.

    With b_j = c_j / c_0, the coefficients satisfy
    j*L_j = j*b_j - sum_{i=1}^{j-1} i*L_i*b_{j-i}.
    Exact for Fraction inputs (the constant term is still a complex log).
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    p0 = p.coeff(0)
    if p0 == 0:
        raise ValueError("log series undefined: p(0) = 0")
    exact = not _is_inexact(p.c)
    b = [p.coeff(j) / p0 if not exact else Fraction(p.coeff(j), 1) / p0 for j in range(m + 1)]
    L = [0] * (m + 1)
    for j in range(1, m + 1):
        s = j * b[j]
        for i in range(1, j):
            s -= i * L[i] * b[j - i]
        L[j] = s / j
    if isinstance(p0, complex) or (isinstance(p0, (int, float, Fraction)) and p0 < 0):
        log_p0 = cmath.log(complex(p0))
    else:
        log_p0 = math.log(float(p0))
    return LogSeries(log_p0=log_p0, coeffs=L[1:], order=m)


def exp_series(coeffs: Sequence, m: int) -> list:
    """Coefficients of exp(sum_{j>=1} L_j z^j) through order m (constant 1).

    Inverse of log_series; used by tests and by the coefficient route of the
    approximation pipeline.
    """
    L = list(coeffs) + [0] * m
    E = [1] + [0] * m
    # E' = L' E  =>  k E_k = sum_{j=1}^{k} j L_j E_{k-j}
    for k in range(1, m + 1):
        s = 0
        for j in range(1, k + 1):
            s += j * L[j - 1] * E[k - j]
        E[k] = s / k
    return E


def _mul_trunc(a: list, b: list, m: int) -> list:
    """Product of coefficient lists truncated to order m."""
    if _is_inexact(a) or _is_inexact(b):
        fa = np.asarray(a, dtype=complex)
        fb = np.asarray(b, dtype=complex)
        out = np.convolve(fa, fb)[: m + 1]
        return list(out)
    out = [0] * (min(len(a) + len(b) - 1, m + 1))
    for i, ai in enumerate(a):
        if ai == 0 or i > m:
            continue
        for j, bj in enumerate(b):
            if i + j > m:
                break
            out[i + j] += ai * bj
    return out


def compose_truncate(outer: Poly, inner: Poly, m: int) -> Poly:
    """Coefficients of outer(inner(w)) through order m.

    Exact in exact arithmetic; cost O(deg(outer) * m^2) via truncated products.
    """
    inner_c = [inner.coeff(j) for j in range(min(len(inner.c), m + 1))]
    result = [0] * (m + 1)
    power = [1]  # inner^i truncated
    for i in range(len(outer.c)):
        ai = outer.c[i]
        if ai != 0:
            for j, pj in enumerate(power):
                if j > m:
                    break
                result[j] += ai * pj
        if i < len(outer.c) - 1:
            power = _mul_trunc(power, inner_c, m)
            if all(x == 0 for x in power):
                break
    return Poly(result)


def polar_form_weights(p: Poly, d: int) -> list:
    """Weights w_i = a_i / C(d, i) of the d-variable polar form of p.

    The polar form is sum over index sets I of w_{|I|} * prod_{i in I} z_i;
    it is the unique multi-affine symmetric polynomial agreeing with p on the
    diagonal.
    """
    if p.degree > d:
        raise ValueError(f"degree {p.degree} exceeds polar-form bound {d}")
    out = []
    for i in range(d + 1):
        a = p.coeff(i)
        binom = math.comb(d, i)
        if isinstance(a, Fraction) or isinstance(a, int):
            out.append(Fraction(a) / binom if a != 0 else Fraction(0))
        else:
            out.append(a / binom)
    return out


def polar_form_eval(weights: Sequence, zs: Sequence) -> complex:
    """Evaluate a polar form given its weights at the points zs.

    Uses elementary symmetric polynomials: value = sum_i w_i e_i(zs).
    """
    d = len(zs)
    # e[k] after processing each z: coefficients of prod (1 + z_j t)
    e = [1] + [0] * d
    for z in zs:
        for k in range(d, 0, -1):
            e[k] = e[k] + z * e[k - 1]
    return sum(w * ek for w, ek in zip(weights, e))


def _quadratic_roots(c0, c1, c2):
    # numerically stable quadratic formula
    disc = cmath.sqrt(c1 * c1 - 4 * c2 * c0)
    if abs(-c1 + disc) >= abs(-c1 - disc):
        q = (-c1 + disc) / 2
    else:
        q = (-c1 - disc) / 2
    r1 = q / c2
    r2 = (c0 / q) if q != 0 else 0.0 + 0.0j
    return [r1, r2]


def roots(p: Poly, tol: float = 1e-12, max_iter: int = 1000) -> list:
    """All complex roots of p (with multiplicity), Aberth–Ehrlich iteration.

    Residual contract: |p(root)| <= tol * max|c_i| * max(1, |root|)^deg for
    every returned root. Raises RootFindingError with the best iterate when
    the iteration budget is exhausted or the contract cannot be met.
    """
    c = [complex(x) for x in p.c]
    deg = p.degree
    if deg < 1:
        raise ValueError("root finding requires degree >= 1")
    c = c[: deg + 1]
    # roots at the origin: factor out low-order zeros
    nzero = 0
    while c[0] == 0:
        nzero += 1
        c = c[1:]
    found = [0.0 + 0.0j] * nzero
    d = len(c) - 1
    if d == 0:
        return _sorted_roots(found)
    if d == 1:
        return _sorted_roots(found + [-c[0] / c[1]])
    if d == 2:
        return _sorted_roots(found + _quadratic_roots(c[0], c[1], c[2]))

    a = np.asarray(c, dtype=complex)
    lead = a[-1]
    an = a / lead
    # derivative coefficients
    dn = an[1:] * np.arange(1, d + 1)
    cauchy = 1.0 + float(np.max(np.abs(an[:-1])))
    # geometric-mean modulus |a0|^(1/d) sits between the smallest and largest
    # root; the Cauchy bound alone overflows for high-degree polynomials with
    # tiny leading coefficients
    geo = float(abs(an[0])) ** (1.0 / d) if an[0] != 0 else 1.0
    radius = min(cauchy, max(2.0 * geo, 1e-8))
    k = np.arange(d)
    z = radius * np.exp(2j * np.pi * (k + 0.35) / d + 0.45j)

    coeff_scale = float(np.max(np.abs(a)))

    def _residual_ok(zz):
        pv = np.polyval(an[::-1], zz) * lead
        bound = tol * coeff_scale * np.maximum(1.0, np.abs(zz)) ** d
        return np.abs(pv) <= bound

    best = z
    best_res = np.inf
    for _ in range(max_iter):
        pv = np.polyval(an[::-1], z)
        res = float(np.max(np.abs(pv) * abs(lead)))
        if res < best_res:
            best_res, best = res, z.copy()
        dv = np.polyval(dn[::-1], z)
        dv = np.where(dv == 0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-300, denom)
        step = w / denom
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.max(np.abs(step)) <= 1e-15 * (1.0 + np.max(np.abs(z))):
            break
    else:
        # budget exhausted: fall through to the residual contract on the
        # best iterate seen, which is the actual guarantee
        z = best
    # Newton polish
    for _ in range(3):
        pv = np.polyval(an[::-1], z)
        dv = np.polyval(dn[::-1], z)
        dv = np.where(dv == 0, 1e-300, dv)
        z = z - pv / dv
    if not bool(np.all(_residual_ok(z))):
        pv = np.polyval(an[::-1], z) * lead
        raise RootFindingError(
            "root residual contract violated",
            best=list(z),
            residual=float(np.max(np.abs(pv))),
        )
    return _sorted_roots(found + list(z))


def _sorted_roots(rs: list) -> list:
    return sorted((complex(r) for r in rs), key=lambda r: (r.real, r.imag))
