"""Block-graded matrices with Grassmann-valued entries.

A :class:`SuperMatrix` over the algebra on ``L`` generators is stored as a
stack ``data[k]`` of ordinary complex matrices, one per monomial bitmask
``k``, so that entry ``(i, j)`` equals ``sum_k data[k, i, j] * beta_k``.
Row grading ``(p, q)`` and column grading ``(r, s)`` split the matrix into

    A (p x r) | B (p x s)
    ----------+----------
    C (q x r) | D (q x s)
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .gaussian import GaussianRational
from .grassmann import (
    BACKENDS,
    GrassmannError,
    GrassmannNumber,
    Parity,
    ParityError,
    coerce_scalar,
    conjugation_table,
    monomial_product,
    popcount,
)


class DimensionError(GrassmannError):
    """Incompatible gradings or shapes."""


@lru_cache(maxsize=None)
def _product_pairs(L: int) -> tuple[tuple[int, int, int, int], ...]:
    pairs = []
    for s in range(1 << L):
        for t in range(1 << L):
            sign, m = monomial_product(s, t)
            if sign:
                pairs.append((s, t, m, sign))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _odd_masks(L: int) -> np.ndarray:
    return np.array([popcount(k) % 2 == 1 for k in range(1 << L)])


def _zeros(L: int, shape: tuple[int, int], backend: str) -> np.ndarray:
    if backend == "float":
        return np.zeros((1 << L,) + shape, dtype=complex)
    out = np.empty((1 << L,) + shape, dtype=object)
    out.fill(GaussianRational(0))
    return out


class SuperMatrix:
    """Immutable ``(p|q) x (r|s)`` supermatrix over a Grassmann algebra."""

    __slots__ = ("row_grading", "col_grading", "L", "backend", "data")

    def __init__(self, data: np.ndarray, row_grading: tuple[int, int], col_grading: tuple[int, int],
                 L: int, backend: str = "exact"):
        if backend not in BACKENDS:
            raise GrassmannError(f"unknown backend {backend!r}")
        row_grading = tuple(int(x) for x in row_grading)
        col_grading = tuple(int(x) for x in col_grading)
        expected = (1 << L, sum(row_grading), sum(col_grading))
        data = np.asarray(data)
        if data.shape != expected:
            raise DimensionError(f"data shape {data.shape} does not match {expected}")
        if backend == "float":
            data = data.astype(complex)
        elif data.dtype != object:
            raise GrassmannError("exact supermatrices need an object array of Gaussian rationals")
        data.setflags(write=False)
        self.data = data
        self.row_grading = row_grading
        self.col_grading = col_grading
        self.L = L
        self.backend = backend

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, row_grading, col_grading, L: int, backend: str = "exact") -> "SuperMatrix":
        shape = (sum(row_grading), sum(col_grading))
        return cls(_zeros(L, shape, backend), row_grading, col_grading, L, backend)

    @classmethod
    def identity(cls, grading, L: int, backend: str = "exact") -> "SuperMatrix":
        n = sum(grading)
        data = _zeros(L, (n, n), backend)
        one = coerce_scalar(1, backend)
        for i in range(n):
            data[0, i, i] = one
        return cls(data, grading, grading, L, backend)

    @classmethod
    def from_complex(cls, matrix, row_grading, col_grading, L: int, backend: str = "exact") -> "SuperMatrix":
        """Body-only supermatrix from a 2D array of scalars."""
        matrix = np.asarray(matrix, dtype=object)
        data = _zeros(L, matrix.shape, backend)
        for (i, j), v in np.ndenumerate(matrix):
            data[0, i, j] = coerce_scalar(v, backend)
        return cls(data, row_grading, col_grading, L, backend)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[GrassmannNumber]], row_grading, col_grading) -> "SuperMatrix":
        first = entries[0][0]
        L, backend = first.L, first.backend
        data = _zeros(L, (len(entries), len(entries[0])), backend)
        for i, row in enumerate(entries):
            for j, g in enumerate(row):
                if g.L != L or g.backend != backend:
                    raise GrassmannError("entries disagree on generator count or backend")
                for m, c in g.coeffs.items():
                    data[m, i, j] = c
        return cls(data, row_grading, col_grading, L, backend)

    # -- accessors --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1:]

    def entry(self, i: int, j: int) -> GrassmannNumber:
        return GrassmannNumber(self.L, {k: self.data[k, i, j] for k in range(1 << self.L)}, self.backend)

    def entries(self) -> list[list[GrassmannNumber]]:
        n, m = self.shape
        return [[self.entry(i, j) for j in range(m)] for i in range(n)]

    @property
    def body(self) -> np.ndarray:
        return self.data[0]

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return the stacked ``(A, B, C, D)`` blocks."""
        p, r = self.row_grading[0], self.col_grading[0]
        d = self.data
        return d[:, :p, :r], d[:, :p, r:], d[:, p:, :r], d[:, p:, r:]

    def _block_parity(self) -> tuple[bool, bool]:
        """``(is_even, is_odd)``; both hold for the zero matrix."""
        odd = _odd_masks(self.L)
        A, B, C, D = self.blocks()

        def supported_on(block, mask_sel):
            sub = block[mask_sel]
            return not sub.size or not np.any(sub != 0)

        diag_even = supported_on(A, odd) and supported_on(D, odd)
        diag_odd = supported_on(A, ~odd) and supported_on(D, ~odd)
        off_even = supported_on(B, odd) and supported_on(C, odd)
        off_odd = supported_on(B, ~odd) and supported_on(C, ~odd)
        return diag_even and off_odd, diag_odd and off_even

    @property
    def parity(self) -> Parity:
        is_even, is_odd = self._block_parity()
        if is_even:
            return Parity.EVEN
        if is_odd:
            return Parity.ODD
        return Parity.MIXED

    @property
    def degree(self) -> int:
        p = self.parity
        if p is Parity.MIXED:
            raise ParityError("supermatrix has mixed parity")
        return p.value

    def parity_split(self) -> tuple["SuperMatrix", "SuperMatrix"]:
        """Split into even and odd supermatrices that sum to ``self``."""
        odd = _odd_masks(self.L)
        p, r = self.row_grading[0], self.col_grading[0]
        n, m = self.shape
        diag = np.zeros((n, m), dtype=bool)
        diag[:p, :r] = True
        diag[p:, r:] = True
        even_sel = (~odd)[:, None, None] & diag[None] | odd[:, None, None] & ~diag[None]
        zero = _zeros(self.L, (n, m), self.backend)
        even = np.where(even_sel, self.data, zero)
        odd_part = np.where(even_sel, zero, self.data)
        return self._like(even), self._like(odd_part)

    def _like(self, data, row_grading=None, col_grading=None) -> "SuperMatrix":
        return SuperMatrix(data, row_grading or self.row_grading, col_grading or self.col_grading,
                           self.L, self.backend)

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def max_abs(self) -> float:
        if self.backend == "float":
            return float(np.max(np.abs(self.data), initial=0.0))
        return max((abs(x) for x in self.data.flat), default=0.0)

    def to_float(self) -> "SuperMatrix":
        if self.backend == "float":
            return self
        data = np.vectorize(complex, otypes=[complex])(self.data)
        return SuperMatrix(data, self.row_grading, self.col_grading, self.L, "float")

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other: "SuperMatrix") -> None:
        if self.L != other.L or self.backend != other.backend:
            raise GrassmannError("supermatrices disagree on generator count or backend")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_same(other)
        if self.row_grading != other.row_grading or self.col_grading != other.col_grading:
            raise DimensionError("gradings differ")
        return self._like(self.data + other.data)

    def __neg__(self) -> "SuperMatrix":
        return self._like(-self.data)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        """Multiply by an ordinary (Grassmann-even, body-only) scalar."""
        return self._like(self.data * coerce_scalar(c, self.backend))

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return sm_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.row_grading == other.row_grading and self.col_grading == other.col_grading
                and self.L == other.L and self.backend == other.backend
                and bool(np.all(self.data == other.data)))

    __hash__ = None

    def __repr__(self) -> str:
        return (f"SuperMatrix({self.row_grading}x{self.col_grading}, L={self.L}, "
                f"backend={self.backend}, parity={self.parity.name})")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "row_grading": list(self.row_grading),
            "col_grading": list(self.col_grading),
            "entries": [[g.to_json() for g in row] for row in self.entries()],
        }

    @classmethod
    def from_json(cls, obj, backend: str | None = None) -> "SuperMatrix":
        try:
            entries = [[GrassmannNumber.from_json(g, backend) for g in row] for row in obj["entries"]]
            return cls.from_entries(entries, tuple(obj["row_grading"]), tuple(obj["col_grading"]))
        except (KeyError, TypeError, IndexError) as exc:
            raise GrassmannError(f"malformed supermatrix JSON: {exc}") from exc


def distance(X: SuperMatrix, Y: SuperMatrix) -> float:
    """Max-norm of ``X - Y`` over every Grassmann coefficient."""
    return (X - Y).max_abs()


def sm_mul(X: SuperMatrix, Y: SuperMatrix) -> SuperMatrix:
    X._check_same(Y)
    if X.col_grading != Y.row_grading:
        raise DimensionError(f"cannot multiply: columns {X.col_grading} vs rows {Y.row_grading}")
    out = _zeros(X.L, (X.shape[0], Y.shape[1]), X.backend)
    for s, t, m, sign in _product_pairs(X.L):
        prod = X.data[s] @ Y.data[t]
        out[m] = out[m] + prod if sign > 0 else out[m] - prod
    return SuperMatrix(out, X.row_grading, Y.col_grading, X.L, X.backend)


def supertrace(M: SuperMatrix) -> GrassmannNumber:
    """``tr A - (-1)^deg(M) tr D``, extended linearly over the parity split.

    On even matrices this is ``tr A - tr D``.  The odd-matrix sign is what
    makes ``str(XY) = (-1)^(deg X deg Y) str(YX)`` hold for every parity pair.
    """
    if M.row_grading != M.col_grading:
        raise DimensionError("supertrace needs a square grading")
    if M.parity is Parity.MIXED:
        even, odd = M.parity_split()
        return supertrace(even) + supertrace(odd)
    p = M.row_grading[0]
    sign = 1 if M.parity is Parity.ODD else -1
    zero = coerce_scalar(0, M.backend)
    coeffs = {}
    for k in range(1 << M.L):
        diag = np.diagonal(M.data[k])
        coeffs[k] = sum(diag[:p], zero) + sum(diag[p:], zero) * sign
    return GrassmannNumber(M.L, coeffs, M.backend)


def supertranspose(M: SuperMatrix) -> SuperMatrix:
    sign = -1 if M.degree else 1
    A, B, C, D = M.blocks()
    tr = lambda X: np.transpose(X, (0, 2, 1))  # noqa: E731
    top = np.concatenate([tr(A), tr(C) * sign], axis=2)
    bottom = np.concatenate([tr(B) * (-sign), tr(D)], axis=2)
    data = np.concatenate([top, bottom], axis=1)
    return M._like(data, row_grading=M.col_grading, col_grading=M.row_grading)


def pseudo_conj_matrix(M: SuperMatrix) -> SuperMatrix:
    """Entrywise pseudo-conjugation."""
    table = conjugation_table(M.L)
    out = _zeros(M.L, M.shape, M.backend)
    conj = np.conjugate if M.backend == "float" else np.vectorize(lambda z: z.conjugate(), otypes=[object])
    for k, (sign, image) in enumerate(table):
        block = conj(M.data[k])
        out[image] = block if sign > 0 else -block
    return M._like(out)


def graded_adjoint(M: SuperMatrix) -> SuperMatrix:
    return pseudo_conj_matrix(supertranspose(M))


def graded_adjoint_linear(M: SuperMatrix) -> SuperMatrix:
    """Graded adjoint extended linearly to mixed-parity input."""
    even, odd = M.parity_split()
    return graded_adjoint(even) + graded_adjoint(odd)


def grading_operator(grading, L: int, backend: str = "exact", sign: int = -1) -> SuperMatrix:
    """``diag(I_p, sign * I_q)``."""
    diag = [1] * grading[0] + [sign] * grading[1]
    return SuperMatrix.from_complex(np.diag(diag), grading, grading, L, backend)


def scalar_lmul(a: GrassmannNumber, M: SuperMatrix) -> SuperMatrix:
    """Left multiplication ``diag(a I_p, (-1)^deg(a) a I_q) . M`` by a homogeneous scalar."""
    if a.L != M.L or a.backend != M.backend:
        raise GrassmannError("scalar and supermatrix disagree on generator count or backend")
    deg = a.degree
    M.degree  # mixed-parity matrices are rejected
    p, q = M.row_grading
    n = p + q
    data = _zeros(M.L, (n, n), M.backend)
    for k, c in a.coeffs.items():
        for i in range(n):
            data[k, i, i] = -c if (deg and i >= p) else c
    left = SuperMatrix(data, M.row_grading, M.row_grading, M.L, M.backend)
    return sm_mul(left, M)


def entrywise_lmul(a: GrassmannNumber, M: SuperMatrix) -> SuperMatrix:
    """Plain left multiplication of every entry by ``a``."""
    return sm_mul(scalar_matrix(a, M.row_grading), M)


def scalar_matrix(a: GrassmannNumber, grading) -> SuperMatrix:
    n = sum(grading)
    data = _zeros(a.L, (n, n), a.backend)
    for k, c in a.coeffs.items():
        for i in range(n):
            data[k, i, i] = c
    return SuperMatrix(data, grading, grading, a.L, a.backend)


def regular_representation(M: SuperMatrix) -> np.ndarray:
    """Complex ``(2^L n) x (2^L m)`` matrix of ``M`` acting on Grassmann-valued columns.

    Block ``(k_out, k_in)`` collects the coefficient that sends monomial
    ``k_in`` to ``k_out`` under left multiplication, so the map is an algebra
    homomorphism: ``regular_representation(X @ Y) == rr(X) @ rr(Y)``.
    """
    L = M.L
    n, m = M.shape
    data = M.to_float().data
    out = np.zeros(((1 << L) * n, (1 << L) * m), dtype=complex)
    for s in range(1 << L):
        for t in range(1 << L):
            sign, k = monomial_product(s, t)
            if sign:
                out[k * n:(k + 1) * n, t * m:(t + 1) * m] += sign * data[s]
    return out
