"""Monomial bases of homogeneous forms and the linear conditions cut by
multiple points and tangent directions.

A degree-d form on P^n is a coefficient vector over the graded-lex basis
(x_0 > x_1 > ... > x_n); every report prints coefficients in this order.
Rows are residues mod p and assume p > d so the scaled derivative conditions
stay faithful (no division by alpha! anywhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np


def _exponents(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], rem: int, k: int) -> None:
        if k == 0:
            out.append(prefix + (rem,))
            return
        for e in range(rem, -1, -1):
            rec(prefix + (e,), rem - e, k - 1)

    rec((), d, n)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> "MonomialBasis":
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got n={n}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got d={d}")
    return MonomialBasis(n, d, _exponents(n, d))


@dataclass(frozen=True, eq=False)
class MonomialBasis:
    """All degree-d monomials in x_0..x_n, graded-lex (x_0 first)."""

    n: int
    d: int
    exponents: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def exponent_array(self) -> np.ndarray:
        arr = getattr(self, "_arr", None)
        if arr is None:
            arr = np.array(self.exponents, dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, "_arr", arr)
        return arr

    def index_of(self, alpha: tuple[int, ...]) -> int:
        lut = getattr(self, "_lut", None)
        if lut is None:
            lut = {e: i for i, e in enumerate(self.exponents)}
            object.__setattr__(self, "_lut", lut)
        return lut[alpha]

    def size_check(self) -> bool:
        return len(self.exponents) == comb(self.n + self.d, self.n)


def _falling(b: int, a: int) -> int:
    if a > b:
        return 0
    v = 1
    for t in range(a):
        v *= b - t
    return v


def derivative_row(basis: MonomialBasis, alpha, pt, p: int) -> np.ndarray:
    """Row of (d/dx)^alpha applied to each basis monomial, evaluated at pt.

    Vanishing of the rows over all |alpha| <= m-1 expresses multiplicity >= m
    at pt; the rows with |alpha| = m-1 alone suffice for p > d by the Euler
    relation, and those are what condition matrices stack.
    """
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != basis.n + 1:
        raise ValueError("derivative order must have n+1 components")
    if any(a < 0 for a in alpha):
        raise ValueError("derivative order components must be >= 0")
    if sum(alpha) >= p:
        raise ValueError(f"derivative order |alpha|={sum(alpha)} must be < p={p}")
    pt = np.asarray(pt, dtype=np.int64) % p
    pw = _power_table(pt, basis.d, p)
    row = np.empty(len(basis), dtype=np.int64)
    for j, beta in enumerate(basis.exponents):
        v = 1
        for i, (bi, ai) in enumerate(zip(beta, alpha)):
            if bi < ai:
                v = 0
                break
            v = v * (_falling(bi, ai) % p) % p * int(pw[i, bi - ai]) % p
        row[j] = v
    return row


def tangent_direction_row(basis: MonomialBasis, pt, v, m: int, p: int) -> np.ndarray:
    """Value at v of the order-m leading form of each monomial expanded at pt.

    Entry j is the coefficient of t^m in m_j(pt + t*v), i.e. the alpha!-scaled
    polarization sum over |alpha| = m. Together with the multiplicity-m rows at
    pt, vanishing states that the tangent cone at pt contains the direction v.
    Well defined modulo adding multiples of pt to v once multiplicity rows are
    imposed; requires v not proportional to pt.
    """
    if m >= p:
        raise ValueError(f"multiplicity m={m} must be < p={p}")
    if m < 1:
        raise ValueError(f"multiplicity m={m} must be >= 1")
    pt = np.asarray(pt, dtype=np.int64) % p
    v = np.asarray(v, dtype=np.int64) % p
    if _proportional(pt, v, p):
        raise ValueError("direction vector is proportional to the base point")
    pw_pt = _power_table(pt, basis.d, p)
    pw_v = _power_table(v, basis.d, p)
    row = np.empty(len(basis), dtype=np.int64)
    for j, beta in enumerate(basis.exponents):
        # coefficient of t^m in prod_i (pt_i + t v_i)^{beta_i}
        poly = [1]
        for i, bi in enumerate(beta):
            if bi == 0:
                continue
            factor = [
                comb(bi, k) % p * int(pw_pt[i, bi - k]) % p * int(pw_v[i, k]) % p
                for k in range(bi + 1)
            ]
            limit = min(len(poly) + bi, m + 1)
            conv = [0] * limit
            for a, ca in enumerate(poly):
                if ca == 0:
                    continue
                for b, cb in enumerate(factor):
                    if a + b >= limit:
                        break
                    conv[a + b] = (conv[a + b] + ca * cb) % p
            poly = conv
        row[j] = poly[m] if m < len(poly) else 0
    return row


def eval_form(coeffs, basis: MonomialBasis, pt, p: int) -> int:
    """Value of the form with the given coefficient vector at a single point."""
    pt = np.asarray(pt, dtype=np.int64) % p
    if not pt.any():
        raise ValueError("cannot evaluate at the zero vector")
    vals = evaluate_basis(basis, pt.reshape(1, -1), p)[0]
    coeffs = np.asarray(coeffs, dtype=np.int64) % p
    return int((vals * coeffs % p).sum() % p)


def evaluate_basis(basis: MonomialBasis, pts: np.ndarray, p: int) -> np.ndarray:
    """Evaluate every basis monomial on a batch of points.

    pts has shape (N, n+1); the result has shape (N, |basis|). Built degree by
    degree (each monomial is a parent of one degree lower times one variable),
    which keeps the census hot path at one gather and one multiply per column.
    """
    pts = np.asarray(pts, dtype=np.int64) % p
    if basis.d == 0:
        return np.ones((pts.shape[0], 1), dtype=np.int64)
    prev = pts.copy()  # degree-1 values, basis order = coordinate order
    for deg in range(2, basis.d + 1):
        parent_idx, var_idx = _build_steps(basis.n, deg)
        prev = prev[:, parent_idx] * pts[:, var_idx] % p
    return prev


@lru_cache(maxsize=None)
def _build_steps(n: int, deg: int) -> tuple[np.ndarray, np.ndarray]:
    """(parent index in degree-(deg-1) basis, variable index) per monomial."""
    lower = monomial_basis(n, deg - 1)
    cur = monomial_basis(n, deg)
    parents = np.empty(len(cur), dtype=np.intp)
    variables = np.empty(len(cur), dtype=np.intp)
    for j, beta in enumerate(cur.exponents):
        i = next(t for t, e in enumerate(beta) if e > 0)
        parent = beta[:i] + (beta[i] - 1,) + beta[i + 1 :]
        parents[j] = lower.index_of(parent)
        variables[j] = i
    parents.setflags(write=False)
    variables.setflags(write=False)
    return parents, variables


def _power_table(vec: np.ndarray, d: int, p: int) -> np.ndarray:
    """pw[i, e] = vec[i]^e mod p for 0 <= e <= d."""
    k = len(vec)
    pw = np.ones((k, d + 1), dtype=np.int64)
    for e in range(1, d + 1):
        pw[:, e] = pw[:, e - 1] * vec % p
    return pw


def _proportional(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    """Projective proportionality over F_p (includes either being zero)."""
    if not a.any() or not b.any():
        return True
    # all 2x2 minors vanish
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if (int(a[i]) * int(b[j]) - int(a[j]) * int(b[i])) % p != 0:
                return False
    return True
