"""Two-component su(2) spinors, Majorana pairs and the bilinear 3-vector.

Index gymnastics use ``xi^A = eps^{AB} xi_B`` and ``xi_A = xi^B eps_{BA}``,
which are mutually inverse because ``Sigma^{-1} = -Sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from .algebra import CHARGE_C, EPS2, PAULI_LOWER, PAULI_MIXED
from .gaussian import GaussianRational
from .grassmann import GrassmannError, GrassmannNumber, UnsupportedAlgebraError, coerce_scalar

LOWER, UPPER = "lower", "upper"


def _flip(position: str) -> str:
    return UPPER if position == LOWER else LOWER


def _table(t, backend: str):
    return [[coerce_scalar(x, backend) for x in row] for row in t]


@dataclass(frozen=True)
class OrdinarySpinor:
    """Complex (Grassmann-even) spinor; ``primed`` marks the conjugate space."""

    components: tuple
    index: str = LOWER
    primed: bool = False
    backend: str = "exact"

    @classmethod
    def of(cls, c0, c1, index: str = LOWER, backend: str = "exact") -> "OrdinarySpinor":
        return cls((coerce_scalar(c0, backend), coerce_scalar(c1, backend)), index, False, backend)

    def conj(self) -> "OrdinarySpinor":
        return replace(self, components=tuple(c.conjugate() for c in self.components), primed=not self.primed)

    def __neg__(self) -> "OrdinarySpinor":
        return replace(self, components=tuple(-c for c in self.components))

    def scaled(self, t) -> "OrdinarySpinor":
        t = coerce_scalar(t, self.backend)
        return replace(self, components=tuple(c * t for c in self.components))

    def to_float(self) -> "OrdinarySpinor":
        return replace(self, components=tuple(complex(c) for c in self.components), backend="float")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components)


@dataclass(frozen=True)
class OddSpinor:
    """Spinor with Grassmann-odd components."""

    components: tuple[GrassmannNumber, GrassmannNumber]
    index: str = LOWER

    def __post_init__(self):
        for c in self.components:
            if not c.is_zero() and c.degree != 1:
                raise GrassmannError("odd spinor components must be Grassmann-odd")

    @property
    def L(self) -> int:
        return self.components[0].L

    @property
    def backend(self) -> str:
        return self.components[0].backend

    def __neg__(self) -> "OddSpinor":
        return OddSpinor(tuple(-c for c in self.components), self.index)

    def scaled(self, t) -> "OddSpinor":
        return OddSpinor(tuple(c * t for c in self.components), self.index)


def raise_lower(s):
    """Move the spinor index: raise a lower index, lower an upper one."""
    one = s.components[0]
    backend = s.backend
    eps = _table(EPS2, backend)
    c = s.components
    zero = one * 0
    if s.index == LOWER:
        # xi^A = eps^{AB} xi_B
        new = tuple(sum((c[B] * eps[A][B] for B in range(2)), zero) for A in range(2))
    else:
        # xi_A = xi^B eps_{BA}
        new = tuple(sum((c[B] * eps[B][A] for B in range(2)), zero) for A in range(2))
    return replace(s, components=new, index=_flip(s.index))


def lowered(s):
    return s if s.index == LOWER else raise_lower(s)


def raised(s):
    return s if s.index == UPPER else raise_lower(s)


def conjugate_partner(s: OrdinarySpinor, sign: int = 1) -> OrdinarySpinor:
    """``sign * i C_A^{B'} sbar_{B'}`` for a lower-index unprimed spinor ``s``."""
    if s.index != LOWER or s.primed:
        raise ValueError("expected a lower-index unprimed spinor")
    C = _table(CHARGE_C, s.backend)
    bar = s.conj().components
    i = coerce_scalar(1j, s.backend) * sign
    comps = tuple(i * (C[A][0] * bar[0] + C[A][1] * bar[1]) for A in range(2))
    return OrdinarySpinor(comps, LOWER, False, s.backend)


def compose_odd(first: OrdinarySpinor, second: OrdinarySpinor, L: int = 2) -> OddSpinor:
    """``first * beta_1 + second * beta_2`` as a lower-index odd spinor."""
    backend = first.backend
    b1 = GrassmannNumber.generator(1, L, backend)
    b2 = GrassmannNumber.generator(2, L, backend)
    comps = tuple(b1 * first.components[A] + b2 * second.components[A] for A in range(2))
    return OddSpinor(comps, LOWER)


def build_majorana_pair(eta: OrdinarySpinor, L: int = 2) -> OddSpinor:
    """Grassmann-odd spinor ``xi_A = xi1_A beta_1 + xi2_A beta_2`` fixed by one ordinary spinor.

    ``xi2 = eta`` and ``xi1_A = i C_A^{B'} etabar_{B'}``.
    """
    if L != 2:
        raise UnsupportedAlgebraError(f"the Majorana map is defined on a single beta pair (L=2), got L={L}")
    return compose_odd(conjugate_partner(eta), eta, L)


def components(xi: OddSpinor) -> tuple[OrdinarySpinor, OrdinarySpinor]:
    """Ordinary spinors ``(xi1, xi2)`` of a lower-index odd spinor over ``beta_1, beta_2``."""
    if xi.L != 2:
        raise UnsupportedAlgebraError("component split is defined for L=2")
    xi = lowered(xi)
    if any(set(c.coeffs) - {1, 2} for c in xi.components):
        raise GrassmannError("odd spinor has components beyond beta_1, beta_2")
    first = tuple(c.coeff((1,)) for c in xi.components)
    second = tuple(c.coeff((2,)) for c in xi.components)
    return OrdinarySpinor(first, LOWER, False, xi.backend), OrdinarySpinor(second, LOWER, False, xi.backend)


def is_majorana(xi: OddSpinor) -> bool:
    """Both Majorana relations ``xi1 = i C xi2bar`` and ``xi2 = -i C xi1bar``."""
    first, second = components(xi)
    ok1 = conjugate_partner(second).components == first.components
    ok2 = conjugate_partner(first, -1).components == second.components
    if xi.backend == "float":
        ok1 = np.allclose(conjugate_partner(second).components, first.components, atol=1e-14)
        ok2 = np.allclose(conjugate_partner(first, -1).components, second.components, atol=1e-14)
    return bool(ok1 and ok2)


def _sigma_sigma(backend: str):
    """``Sigma sigma^a`` with sigma mixed, as nested lists."""
    eps = _table(EPS2, backend)
    sig = [_table(s, backend) for s in PAULI_MIXED]
    zero = coerce_scalar(0, backend)
    return [[[sum((eps[A][B] * sig[a][B][C] for B in range(2)), zero) for C in range(2)] for A in range(2)]
            for a in range(3)]


def _quad(x, M, y, zero):
    return sum((x[A] * M[A][C] * y[C] for A, C in product(range(2), repeat=2)), zero)


def extract_vector(xi: OddSpinor, theta: OddSpinor) -> tuple:
    """3-vector ``v^a = xi1^t Sigma sigma^a theta2 - theta1^t Sigma sigma^a xi2``."""
    if xi.L != theta.L or xi.backend != theta.backend:
        raise GrassmannError("odd spinors disagree on generator count or backend")
    x1, x2 = components(xi)
    t1, t2 = components(theta)
    zero = coerce_scalar(0, xi.backend)
    ss = _sigma_sigma(xi.backend)
    return tuple(_quad(x1.components, ss[a], t2.components, zero) - _quad(t1.components, ss[a], x2.components, zero)
                 for a in range(3))


def odd_bilinear(xi: OddSpinor, theta: OddSpinor) -> tuple[GrassmannNumber, GrassmannNumber, GrassmannNumber]:
    """Grassmann-even vector ``xi^A theta^B (sigma^a)_{AB}`` for any generator count."""
    xu, tu = raised(xi).components, raised(theta).components
    sig = [_table(s, xi.backend) for s in PAULI_LOWER]
    zero = xu[0] * 0
    return tuple(sum((xu[A] * tu[B] * sig[a][A][B] for A, B in product(range(2), repeat=2)), zero)
                 for a in range(3))


def majorana_vector(eta: OrdinarySpinor, vartheta: OrdinarySpinor) -> tuple:
    """``i(etabar^t C^t Sigma sigma^a vartheta - varthetabar^t C^t Sigma sigma^a eta)``."""
    backend = eta.backend
    zero = coerce_scalar(0, backend)
    C = _table(CHARGE_C, backend)
    ss = _sigma_sigma(backend)
    # C^t Sigma sigma^a
    cts = [[[sum((C[B][A] * ss[a][B][D] for B in range(2)), zero) for D in range(2)] for A in range(2)]
           for a in range(3)]
    i = coerce_scalar(1j, backend)
    eb, vb = eta.conj().components, vartheta.conj().components
    return tuple(i * (_quad(eb, cts[a], vartheta.components, zero) - _quad(vb, cts[a], eta.components, zero))
                 for a in range(3))


def check_reality(v, tol: float = 1e-13) -> tuple[bool, float]:
    """``(is_real, max |Im v^a|)``; exact input must have identically zero imaginary parts."""
    if all(isinstance(x, GaussianRational) for x in v):
        worst = max(abs(float(x.im)) for x in v)
        return all(x.im == 0 for x in v), worst
    worst = max(abs(complex(x).imag) for x in v)
    return worst <= tol, worst


def epsilon_identity_residuals() -> list[int]:
    """``eps_AB eps_CD + eps_AC eps_DB + eps_AD eps_BC`` over all 16 index assignments."""
    e = [[int(x.re) for x in row] for row in EPS2]
    return [e[A][B] * e[C][D] + e[A][C] * e[D][B] + e[A][D] * e[B][C]
            for A, B, C, D in product(range(2), repeat=4)]
