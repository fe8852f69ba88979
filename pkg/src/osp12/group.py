"""UOSp(1|2) group elements built from Grassmann-valued supermatrices.

Matrix functions run on the float backend.  Souls are nilpotent, so the
Taylor and Mercator series only need to converge on the body; every soul
contribution of degree above ``L`` vanishes identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import (
    GRADING,
    PAULI_MIXED,
    GaugeParameters,
    algebra_element,
    eps3,
    extract_parameters,
)
from .grassmann import GrassmannNumber, Parity, ParityError
from .report import Check, VerificationReport
from .spinors import OddSpinor, odd_bilinear
from .supermatrix import (
    DimensionError,
    SuperMatrix,
    distance,
    graded_adjoint,
    pseudo_conj_matrix,
    sm_mul,
    supertranspose,
)

# coefficient of xi^A theta^B (sigma^a)_{AB} in the composed even parameter
ODD_BILINEAR_COEFF = 0.25


class ConvergenceError(ArithmeticError):
    """A matrix-function iteration failed to converge."""


def _check_square(M: SuperMatrix) -> None:
    if M.row_grading != M.col_grading:
        raise DimensionError("matrix functions need a square grading")


def _body_norm(M: SuperMatrix) -> float:
    return float(np.linalg.norm(M.body, np.inf))


def sm_exp(M: SuperMatrix, tol: float = 1e-17) -> SuperMatrix:
    """Scaling-and-squaring Taylor exponential."""
    _check_square(M)
    M = M.to_float()
    norm = _body_norm(M)
    k = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    X = M.scale(2.0 ** -k)
    I = SuperMatrix.identity(M.row_grading, M.L, "float")
    result, term = I, I
    for n in range(1, 200):
        term = sm_mul(term, X).scale(1.0 / n)
        result = result + term
        if n > M.L and term.max_abs() <= tol * max(1.0, result.max_abs()):
            break
    else:
        raise ConvergenceError("Taylor series did not converge")
    for _ in range(k):
        result = sm_mul(result, result)
    return result


def sm_inv(U: SuperMatrix) -> SuperMatrix:
    """Inverse through the body inverse and a finite nilpotent Neumann series."""
    _check_square(U)
    U = U.to_float()
    try:
        body_inv = np.linalg.inv(U.body)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("body of the supermatrix is singular") from exc
    data = np.zeros_like(U.data)
    data[0] = body_inv
    B = SuperMatrix(data, U.row_grading, U.row_grading, U.L, "float")
    soul = U - SuperMatrix(np.concatenate([U.data[:1], np.zeros_like(U.data[1:])]), U.row_grading,
                           U.col_grading, U.L, "float")
    N = sm_mul(B, soul)
    out, term = B, B
    for _ in range(U.L):
        term = -sm_mul(N, term)
        out = out + term
    return out


def sm_sqrt(U: SuperMatrix, max_iter: int = 60) -> SuperMatrix:
    """Principal square root by the Denman-Beavers iteration."""
    Y = U.to_float()
    Z = SuperMatrix.identity(U.row_grading, U.L, "float")
    for _ in range(max_iter):
        Y_next = (Y + sm_inv(Z)).scale(0.5)
        Z = (Z + sm_inv(Y)).scale(0.5)
        step = distance(Y_next, Y)
        Y = Y_next
        if step <= 1e-15 * max(1.0, Y.max_abs()):
            return Y
    raise ConvergenceError("square-root iteration did not converge")


def sm_log(U: SuperMatrix, tol: float = 1e-17, max_roots: int = 40) -> SuperMatrix:
    """Principal logarithm by inverse scaling and squaring.

    Square roots are taken until ``||body(U) - I||_inf <= 1/4``; the Mercator
    series of ``log(I + Y)`` is then summed and rescaled by ``2^k``.
    """
    _check_square(U)
    if U.parity is not Parity.EVEN:
        raise ParityError("logarithm is defined here for even supermatrices only")
    X = U.to_float()
    I = SuperMatrix.identity(U.row_grading, U.L, "float")
    k = 0
    while _body_norm(X - I) > 0.25:
        if k >= max_roots:
            raise ConvergenceError("body too far from the identity for the principal logarithm")
        X = sm_sqrt(X)
        k += 1
    Y = X - I
    result = SuperMatrix.zeros(U.row_grading, U.col_grading, U.L, "float")
    power = I
    for n in range(1, 400):
        power = sm_mul(power, Y)
        term = power.scale((-1) ** (n + 1) / n)
        result = result + term
        if n > U.L and term.max_abs() <= tol * max(1.0, result.max_abs()):
            break
    else:
        raise ConvergenceError("Mercator series did not converge")
    return result.scale(2.0 ** k)


@dataclass(frozen=True)
class GroupElement:
    U: SuperMatrix
    source_params: GaugeParameters | None = field(default=None, compare=False)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        params = -self.source_params if self.source_params is not None else None
        return GroupElement(sm_inv(self.U), params)

    def adjoint(self) -> SuperMatrix:
        return graded_adjoint(self.U)

    def parameters(self) -> GaugeParameters:
        return extract_parameters(sm_log(self.U))


def make_element(p: GaugeParameters) -> GroupElement:
    p = p.to_float()
    U = sm_exp(algebra_element(p))
    return GroupElement(U, p)


def identity_element(L: int = 2) -> GroupElement:
    return GroupElement(SuperMatrix.identity(GRADING, L, "float"), GaugeParameters.zero(L, "float"))


def compose(g: GroupElement, h: GroupElement, with_params: bool = False) -> GroupElement:
    """``g h``; with ``with_params`` the coordinates are recovered from the logarithm."""
    if g.U.L != h.U.L or g.U.backend != h.U.backend:
        raise DimensionError("group elements disagree on generator count or backend")
    U = sm_mul(g.U, h.U)
    return GroupElement(U, extract_parameters(sm_log(U)) if with_params else None)


def bch_second_order(k: GaugeParameters, p: GaugeParameters) -> GaugeParameters:
    """Coordinates of ``U(k) U(p)`` through the two-fold commutator.

    ``eps'^a = eps^a + kappa^a - 1/2 kappa_b eps_c eps_{bca} + 1/4 xi^A theta^B (sigma^a)_{AB}``
    and ``theta'^A = theta^A + xi^A + i/4 (kappa_b theta^B - eps_b xi^B)(sigma^b)_B^A``,
    where ``(kappa, xi) = k`` multiplies from the left.
    """
    k, p = k.to_float(), p.to_float()
    kappa, xi = k.epsilon, k.theta
    eps, theta = p.epsilon, p.theta
    zero = kappa[0] * 0
    xi_s, th_s = OddSpinor(xi, "upper"), OddSpinor(theta, "upper")
    bil = odd_bilinear(xi_s, th_s)
    new_eps = []
    for a in range(3):
        cross = sum((kappa[b] * eps[c] * eps3(b, c, a) for b in range(3) for c in range(3)), zero)
        new_eps.append(eps[a] + kappa[a] - cross * 0.5 + bil[a] * ODD_BILINEAR_COEFF)
    sig = [[[complex(x) for x in row] for row in s] for s in PAULI_MIXED]
    new_theta = []
    for A in range(2):
        mix = sum(((kappa[b] * theta[B] - eps[b] * xi[B]) * sig[b][B][A] for b in range(3) for B in range(2)), zero)
        new_theta.append(theta[A] + xi[A] + mix * 0.25j)
    return GaugeParameters(tuple(new_eps), tuple(new_theta))


@dataclass(frozen=True)
class OrderEstimate:
    scales: tuple[float, ...]
    residuals: tuple[float, ...]
    slope: float | None
    exact: bool

    def within(self, low: float = 2.8, high: float = 3.4) -> bool:
        return self.exact or (self.slope is not None and low <= self.slope <= high)


EXACT_FLOOR = 1e-13


def bch_order_check(k: GaugeParameters, p: GaugeParameters, scales: Sequence[float] = (0.1, 0.03, 0.01)) -> OrderEstimate:
    """Fit ``log(residual)`` against ``log(t)`` for the second-order law at scales ``t``."""
    scales = tuple(float(t) for t in scales)
    if any(t <= 0 for t in scales) or any(a <= b for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be positive and strictly decreasing")
    residuals = []
    for t in scales:
        kt, pt = k.scaled(t), p.scaled(t)
        exact = compose(make_element(kt), make_element(pt), with_params=True).source_params
        residuals.append((exact - bch_second_order(kt, pt)).max_abs())
    if all(r <= EXACT_FLOOR for r in residuals):
        return OrderEstimate(scales, tuple(residuals), None, True)
    logs = np.log(np.maximum(residuals, 1e-300))
    slope = float(np.polyfit(np.log(scales), logs, 1)[0])
    return OrderEstimate(scales, tuple(residuals), slope, False)


def graded_unitarity_check(g: GroupElement, tol: float = 1e-10, tol_algebra: float = 1e-12) -> VerificationReport:
    checks = []
    if g.source_params is not None:
        M = algebra_element(g.source_params)
        checks.append(Check.numeric("M^dagger + M", (graded_adjoint(M) + M).max_abs(), tol_algebra))
    I = SuperMatrix.identity(g.U.row_grading, g.U.L, g.U.backend)
    Ud = graded_adjoint(g.U)
    checks.append(Check.numeric("U^dagger U - I", distance(sm_mul(Ud, g.U), I), tol))
    checks.append(Check.numeric("U U^dagger - I", distance(sm_mul(g.U, Ud), I), tol))
    return VerificationReport("unitarity", g.U.backend, checks)


# -- representation space ---------------------------------------------------

def even_supervector(psi1: Sequence[GrassmannNumber], psi2: Sequence[GrassmannNumber]) -> SuperMatrix:
    """Even super-column with Grassmann-even top block and Grassmann-odd bottom block."""
    entries = [[g] for g in list(psi1) + list(psi2)]
    v = SuperMatrix.from_entries(entries, (len(psi1), len(psi2)), (1, 0))
    if v.parity is not Parity.EVEN:
        raise ParityError("super-column is not even")
    return v


def apply(g: GroupElement, psi: SuperMatrix) -> SuperMatrix:
    if psi.parity is not Parity.EVEN:
        raise ParityError("representation vectors must be even")
    out = sm_mul(g.U, psi.to_float() if g.U.backend == "float" else psi)
    if out.parity is not Parity.EVEN:
        raise ParityError("action left the even subspace")
    return out


def dirac_bar(psi: SuperMatrix, gamma: SuperMatrix | None = None) -> SuperMatrix:
    """``(Psi^st)^diamond Gamma`` for an even super-column; ``Gamma`` defaults to the identity."""
    if psi.col_grading != (1, 0):
        raise DimensionError("expected a super-column")
    row = pseudo_conj_matrix(supertranspose(psi))
    if gamma is None:
        return row
    if gamma.parity is not Parity.EVEN:
        raise ParityError("Gamma must be an even supermatrix")
    return sm_mul(row, gamma)
