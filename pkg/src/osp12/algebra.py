"""osp(1|2; C) in its 5x5 adjoint representation.

Indices are 0-based in code: even generators ``T[0..2]`` and odd generators
``tau[0..1]``.  Tables such as ``PAULI_MIXED[a][A][B]`` follow the index
placement in their names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .gaussian import GaussianRational as Q
from .grassmann import GrassmannNumber, Parity, ParityError
from .report import Check, VerificationReport
from .supermatrix import (
    DimensionError,
    SuperMatrix,
    distance,
    grading_operator,
    graded_adjoint,
    scalar_lmul,
    sm_mul,
    supertrace,
)

GRADING = (3, 2)
i_ = Q(0, 1)
h = Q(Fraction(1, 2))

# (sigma_a)_A^B
PAULI_MIXED = (
    ((Q(0), Q(1)), (Q(1), Q(0))),
    ((Q(0), i_), (-i_, Q(0))),
    ((Q(1), Q(0)), (Q(0), Q(-1))),
)
# (sigma^a)_{AB}, symmetric in A, B
PAULI_LOWER = (
    ((Q(-1), Q(0)), (Q(0), Q(1))),
    ((-i_, Q(0)), (Q(0), -i_)),
    ((Q(0), Q(1)), (Q(1), Q(0))),
)
# Sigma = ||eps^{AB}|| = ||eps_{AB}||
EPS2 = ((Q(0), Q(1)), (Q(-1), Q(0)))
# charge conjugation C_A^{B'}; its complex conjugate Cbar_{A'}^B is identical
CHARGE_C = ((Q(0), Q(1)), (Q(-1), Q(0)))
CHARGE_CBAR = CHARGE_C


def eps3(a: int, b: int, c: int) -> int:
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def delta(a: int, b: int) -> int:
    return int(a == b)


def mat(rows) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = Q.coerce(v)
    return out


# adjoint-representation matrices, transcribed entry by entry
_T_TABLES = (
    [[0, 0, i_, 0, 0],
     [0, 0, 0, 0, 0],
     [-i_, 0, 0, 0, 0],
     [0, 0, 0, 0, h],
     [0, 0, 0, h, 0]],
    [[0, -i_, 0, 0, 0],
     [i_, 0, 0, 0, 0],
     [0, 0, 0, 0, 0],
     [0, 0, 0, 0, -i_ * h],
     [0, 0, 0, i_ * h, 0]],
    [[0, 0, 0, 0, 0],
     [0, 0, -i_, 0, 0],
     [0, i_, 0, 0, 0],
     [0, 0, 0, h, 0],
     [0, 0, 0, 0, -h]],
)
_TAU_TABLES = (
    [[0, 0, 0, 0, 1],
     [0, 0, 0, -1, 0],
     [0, 0, 0, -i_, 0],
     [-i_, 0, 0, 0, 0],
     [0, -i_, 1, 0, 0]],
    [[0, 0, 0, 1, 0],
     [0, 0, 0, 0, 1],
     [0, 0, 0, 0, -i_],
     [0, -i_, -1, 0, 0],
     [i_, 0, 0, 0, 0]],
)


@dataclass(frozen=True)
class GeneratorSet:
    T: tuple[SuperMatrix, SuperMatrix, SuperMatrix]
    tau: tuple[SuperMatrix, SuperMatrix]

    @property
    def all(self) -> tuple[SuperMatrix, ...]:
        return self.T + self.tau

    @property
    def L(self) -> int:
        return self.T[0].L

    @property
    def backend(self) -> str:
        return self.T[0].backend

    def replace(self, index: int, matrix: SuperMatrix) -> "GeneratorSet":
        gens = list(self.all)
        gens[index] = matrix
        return GeneratorSet(tuple(gens[:3]), tuple(gens[3:]))


@lru_cache(maxsize=None)
def generators(L: int = 2, backend: str = "exact") -> GeneratorSet:
    T = tuple(SuperMatrix.from_complex(mat(t), GRADING, GRADING, L, backend) for t in _T_TABLES)
    tau = tuple(SuperMatrix.from_complex(mat(t), GRADING, GRADING, L, backend).scale(h if backend == "exact" else 0.5)
                for t in _TAU_TABLES)
    return GeneratorSet(T, tau)


def tau_pm(G: GeneratorSet) -> tuple[SuperMatrix, SuperMatrix]:
    """``(tau_+, tau_-)`` with ``tau_pm = tau_1 +- i tau_2``."""
    it2 = G.tau[1].scale(1j)
    return G.tau[0] + it2, G.tau[0] - it2


def graded_bracket(X: SuperMatrix, Y: SuperMatrix) -> SuperMatrix:
    """``XY - (-1)^(deg X deg Y) YX``."""
    sign = -1 if X.degree * Y.degree else 1
    XY, YX = sm_mul(X, Y), sm_mul(Y, X)
    return XY + YX if sign < 0 else XY - YX


def super_killing(X: SuperMatrix, Y: SuperMatrix) -> GrassmannNumber:
    if X.row_grading != GRADING or X.col_grading != GRADING or Y.row_grading != GRADING \
            or Y.col_grading != GRADING:
        raise DimensionError("super-Killing form is defined on (3|2)x(3|2) supermatrices")
    two_thirds = Q(Fraction(2, 3)) if X.backend == "exact" else 2 / 3
    return supertrace(sm_mul(X, Y)) * two_thirds


def killing_gram(G: GeneratorSet | None = None) -> np.ndarray:
    G = G or generators()
    gens = G.all
    out = np.empty((5, 5), dtype=object)
    for a, X in enumerate(gens):
        for b, Y in enumerate(gens):
            out[a, b] = super_killing(X, Y).body
    return out


def expected_gram() -> np.ndarray:
    out = mat([[0] * 5 for _ in range(5)])
    for a in range(3):
        out[a, a] = Q(1)
    for A in range(2):
        for B in range(2):
            out[3 + A, 3 + B] = i_ * EPS2[A][B]
    return out


def _combo(coeffs, mats, like: SuperMatrix) -> SuperMatrix:
    out = SuperMatrix.zeros(like.row_grading, like.col_grading, like.L, like.backend)
    for c, M in zip(coeffs, mats):
        if c != 0:
            out = out + M.scale(c)
    return out


def _diff_check(name: str, X, Y, tol: float) -> Check:
    """Compare two supermatrices or Grassmann numbers; exact values must agree identically."""
    diff = X - Y
    if diff.backend == "exact":
        return Check.exact(name, diff.is_zero(), diff.max_abs())
    return Check.numeric(name, diff.max_abs(), tol)


NAMES = ("T1", "T2", "T3", "tau1", "tau2")


def structure_rhs(G: GeneratorSet, a: int, b: int) -> SuperMatrix:
    """Right-hand side of the defining relation for generators ``a, b`` (0..4)."""
    like = G.T[0]
    if a < 3 and b < 3:
        return _combo([i_ * eps3(a, b, c) for c in range(3)], G.T, like)
    if a < 3:
        return _combo([h * PAULI_MIXED[a][b - 3][B] for B in range(2)], G.tau, like)
    if b < 3:
        return -structure_rhs(G, b, a)
    return _combo([i_ * h * PAULI_LOWER[c][a - 3][b - 3] for c in range(3)], G.T, like)


class _Brackets:
    """Memoized graded brackets of generator-built supermatrices."""

    def __init__(self, G: GeneratorSet):
        self.G = G
        self._cache: dict = {}

    def __call__(self, a: int, b: int) -> SuperMatrix:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = graded_bracket(self.G.all[a], self.G.all[b])
        return self._cache[key]


def verify_defining_relations(G: GeneratorSet | None = None, tol: float = 1e-12) -> VerificationReport:
    """Check every ordered generator pair against its defining bracket."""
    G = G or generators()
    checks = []
    for a, b in product(range(5), repeat=2):
        lhs = graded_bracket(G.all[a], G.all[b])
        op = "{%s,%s}" if a >= 3 and b >= 3 else "[%s,%s]"
        checks.append(_diff_check(op % (NAMES[a], NAMES[b]), lhs, structure_rhs(G, a, b), tol))
    return VerificationReport("defining-relations", G.backend, checks)


def verify_killing_form(G: GeneratorSet | None = None, tol: float = 1e-12) -> VerificationReport:
    G = G or generators()
    want = expected_gram()
    br = _Brackets(G)
    checks = []
    for a, b in product(range(5), repeat=2):
        value = super_killing(G.all[a], G.all[b])
        target = GrassmannNumber.scalar(want[a, b], G.L, G.backend)
        checks.append(_diff_check(f"B({NAMES[a]},{NAMES[b]})", value, target, tol))
    for a, b in product(range(5), repeat=2):
        X, Y = G.all[a], G.all[b]
        sign = -1 if X.degree * Y.degree else 1
        checks.append(_diff_check(f"supersymmetry B({NAMES[a]},{NAMES[b]})",
                                  super_killing(X, Y), super_killing(Y, X) * sign, tol))
    for a, b, c in product(range(5), repeat=3):
        lhs = super_killing(br(a, b), G.all[c])
        rhs = super_killing(G.all[a], br(b, c))
        checks.append(_diff_check(f"invariance B([{NAMES[a]},{NAMES[b]}], {NAMES[c]})", lhs, rhs, tol))
    return VerificationReport("killing-form", G.backend, checks)


def verify_jacobi(G: GeneratorSet | None = None, tol: float = 1e-12) -> VerificationReport:
    """``(-1)^(dX dZ)[X,[Y,Z}} + cyclic = 0`` on all generator triples."""
    G = G or generators()
    br = _Brackets(G)
    deg = [X.degree for X in G.all]
    zero = SuperMatrix.zeros(GRADING, GRADING, G.L, G.backend)
    checks = []
    for a, b, c in product(range(5), repeat=3):
        total = zero
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            # [X,[Y,Z}} expands over the basis as a linear combination, so reuse cached brackets
            term = graded_bracket(G.all[x], br(y, z))
            total = total - term if deg[x] * deg[z] % 2 else total + term
        checks.append(_diff_check(f"jacobi({NAMES[a]},{NAMES[b]},{NAMES[c]})", total, zero, tol))
    return VerificationReport("jacobi", G.backend, checks)


def grade_star_check(G: GeneratorSet | None = None, tol: float = 1e-12) -> VerificationReport:
    G = G or generators()
    tp, tm = tau_pm(G)
    checks = [
        _diff_check("tau+^dagger = tau-", graded_adjoint(tp), tm, tol),
        _diff_check("tau-^dagger = -tau+", graded_adjoint(tm), -tp, tol),
    ]
    for a in range(3):
        checks.append(_diff_check(f"T{a+1}^dagger = T{a+1}", graded_adjoint(G.T[a]), G.T[a], tol))
    for A in range(2):
        rhs = _combo([-i_ * CHARGE_CBAR[A][B] for B in range(2)], G.tau, G.T[0])
        checks.append(_diff_check(f"tau{A+1}^dagger = -i Cbar tau", graded_adjoint(G.tau[A]), rhs, tol))
    return VerificationReport("grade-star", G.backend, checks)


# -- parameters -------------------------------------------------------------

class NotInAlgebraError(ValueError):
    """The supermatrix is not of the form i(eps^a T_a + theta^A tau_A)."""


@dataclass(frozen=True)
class GaugeParameters:
    """Coordinates ``(epsilon^a, theta^A)`` of ``i(eps^a T_a + theta^A tau_A)``.

    ``theta`` holds the upper-index components of the odd spinor.
    """

    epsilon: tuple[GrassmannNumber, GrassmannNumber, GrassmannNumber]
    theta: tuple[GrassmannNumber, GrassmannNumber]

    @property
    def L(self) -> int:
        return self.epsilon[0].L

    @property
    def backend(self) -> str:
        return self.epsilon[0].backend

    @classmethod
    def zero(cls, L: int = 2, backend: str = "float") -> "GaugeParameters":
        z = GrassmannNumber(L, {}, backend)
        return cls((z, z, z), (z, z))

    @classmethod
    def from_vector(cls, eps, theta=None, L: int = 2, backend: str = "float") -> "GaugeParameters":
        """Plain complex ``eps``; ``theta`` as GrassmannNumbers or ``None``."""
        e = tuple(GrassmannNumber.scalar(x, L, backend) for x in eps)
        if theta is None:
            z = GrassmannNumber(L, {}, backend)
            theta = (z, z)
        return cls(e, tuple(theta))

    def scaled(self, t) -> "GaugeParameters":
        return GaugeParameters(tuple(e * t for e in self.epsilon), tuple(th * t for th in self.theta))

    def __neg__(self) -> "GaugeParameters":
        return self.scaled(-1)

    def __add__(self, other: "GaugeParameters") -> "GaugeParameters":
        return GaugeParameters(tuple(a + b for a, b in zip(self.epsilon, other.epsilon)),
                               tuple(a + b for a, b in zip(self.theta, other.theta)))

    def __sub__(self, other: "GaugeParameters") -> "GaugeParameters":
        return self + (-other)

    def max_abs(self) -> float:
        return max(g.max_abs() for g in self.epsilon + self.theta)

    def to_float(self) -> "GaugeParameters":
        return GaugeParameters(tuple(e.to_float() for e in self.epsilon),
                               tuple(t.to_float() for t in self.theta))


def algebra_element(p: GaugeParameters, G: GeneratorSet | None = None) -> SuperMatrix:
    """``M = i(eps^a T_a + theta^A tau_A)`` with graded scalar multiplication."""
    G = G or generators(p.L, p.backend)
    M = SuperMatrix.zeros(GRADING, GRADING, p.L, p.backend)
    for e, T in zip(p.epsilon, G.T):
        if e.parity is Parity.MIXED:
            raise ParityError("epsilon components must be homogeneous")
        M = M + scalar_lmul(e, T)
    for th, tau in zip(p.theta, G.tau):
        if not th.is_zero() and th.degree != 1:
            raise ParityError("theta components must be Grassmann-odd")
        M = M + scalar_lmul(th, tau)
    return M.scale(1j)


def _gram_inverse_odd(backend: str):
    # the odd block of the Gram matrix is i*eps_{AB}; its inverse is i*eps_{AB} too
    g = [[i_ * EPS2[A][B] for B in range(2)] for A in range(2)]
    if backend == "float":
        g = [[complex(x) for x in row] for row in g]
    return g


def extract_parameters(M: SuperMatrix, tol: float = 1e-10) -> GaugeParameters:
    """Invert ``M = i(eps^a T_a + theta^A tau_A)`` monomial by monomial.

    For monomial ``k`` the coefficient matrix is
    ``i(eps^a[k] T_a + theta^A[k] J^|k| tau_A)`` with ``J`` the grading
    operator, because odd scalars pick up a sign on the lower rows.  Both
    pieces come out of the complex Killing form, the odd one through the
    ``i eps_{AB}`` block.
    """
    if M.row_grading != GRADING or M.col_grading != GRADING:
        raise DimensionError("expected a (3|2)x(3|2) supermatrix")
    L, backend = M.L, M.backend
    G = generators(L, backend)
    J = grading_operator(GRADING, L, backend)
    Jb = J.body
    minus_i = -i_ if backend == "exact" else -1j
    two_thirds = Q(Fraction(2, 3)) if backend == "exact" else 2 / 3
    ginv = _gram_inverse_odd(backend)

    def kill(X: np.ndarray, Y: np.ndarray):
        prod = X @ Y
        d = np.diagonal(prod)
        return (sum(d[:3], 0 * d[0]) - sum(d[3:], 0 * d[0])) * two_thirds

    eps_c = [dict() for _ in range(3)]
    th_c = [dict() for _ in range(2)]
    for k in range(1 << L):
        Mk = M.data[k]
        for a in range(3):
            eps_c[a][k] = kill(Mk, G.T[a].body) * minus_i
        Mk_odd = Jb @ Mk if bin(k).count("1") % 2 else Mk
        b = [kill(Mk_odd, G.tau[B].body) * minus_i for B in range(2)]
        # b_B = theta^A g_{AB}  =>  theta^A = b_B ginv_{BA}
        for A in range(2):
            th_c[A][k] = b[0] * ginv[0][A] + b[1] * ginv[1][A]
    params = GaugeParameters(tuple(GrassmannNumber(L, c, backend) for c in eps_c),
                             tuple(GrassmannNumber(L, c, backend) for c in th_c))
    rebuilt = _rebuild(params, G)
    resid = distance(rebuilt, M)
    if (backend == "exact" and resid != 0) or resid > tol:
        raise NotInAlgebraError(f"supermatrix is not in the algebra span (residual {resid:.3g})")
    return params


def _rebuild(p: GaugeParameters, G: GeneratorSet) -> SuperMatrix:
    """Like :func:`algebra_element` but linear in every monomial, mixed parity allowed."""
    M = SuperMatrix.zeros(GRADING, GRADING, p.L, p.backend)
    for coeffs, gens in ((p.epsilon, G.T), (p.theta, G.tau)):
        for c, X in zip(coeffs, gens):
            even, odd = c.parity_split()
            for part in (even, odd):
                if not part.is_zero():
                    M = M + scalar_lmul(part, X)
    return M.scale(1j)
