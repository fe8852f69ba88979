"""Seeded random draws of Grassmann numbers, spinors and parameters.

Every draw goes through a :class:`numpy.random.Generator` (PCG64) so a seed
reproduces a report exactly.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import GaugeParameters
from .gaussian import GaussianRational
from .grassmann import GrassmannNumber, popcount
from .spinors import OrdinarySpinor, build_majorana_pair, raised
from .supermatrix import SuperMatrix

PRNG = f"numpy.random.PCG64 (numpy {np.__version__})"


def rng_for(seed: int | None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gaussian_rational(rng: np.random.Generator, bound: int = 100) -> GaussianRational:
    """Real and imaginary parts ``n/d`` with ``|n| <= bound`` and ``1 <= d <= bound``."""
    n = rng.integers(-bound, bound + 1, size=2)
    d = rng.integers(1, bound + 1, size=2)
    return GaussianRational(Fraction(int(n[0]), int(d[0])), Fraction(int(n[1]), int(d[1])))


def scalar(rng, backend: str, scale: float = 1.0):
    if backend == "exact":
        return gaussian_rational(rng)
    return complex(*(rng.uniform(-scale, scale, 2)))


def grassmann(rng, L: int, parity: int | None = None, backend: str = "exact", scale: float = 1.0,
              density: float = 1.0) -> GrassmannNumber:
    """Random element; ``parity`` 0/1 restricts to even/odd monomials."""
    coeffs = {}
    for mask in range(1 << L):
        if parity is not None and popcount(mask) % 2 != parity:
            continue
        if rng.random() < density:
            coeffs[mask] = scalar(rng, backend, scale)
    return GrassmannNumber(L, coeffs, backend)


def real_even(rng, L: int = 2, backend: str = "float", scale: float = 0.3, soul: bool = True) -> GrassmannNumber:
    """``r + e beta_1 beta_2`` with real ``r, e``: invariant under pseudo-conjugation."""
    if backend == "exact":
        r, e = gaussian_rational(rng).re, gaussian_rational(rng).re
    else:
        r, e = rng.uniform(-scale, scale, 2)
    coeffs = {0: r}
    if soul:
        coeffs[3] = e
    return GrassmannNumber(L, coeffs, backend)


def spinor(rng, backend: str = "exact", scale: float = 0.3) -> OrdinarySpinor:
    return OrdinarySpinor.of(scalar(rng, backend, scale), scalar(rng, backend, scale), backend=backend)


def majorana_params(rng, backend: str = "float", scale: float = 0.3, even: bool = True, odd: bool = True,
                    soul: bool = True) -> GaugeParameters:
    """Parameters obeying the reality conditions: real (diamond-invariant) eps, Majorana theta."""
    L = 2
    zero = GrassmannNumber(L, {}, backend)
    eps = tuple(real_even(rng, L, backend, scale, soul) if even else zero for _ in range(3))
    if odd:
        theta = raised(build_majorana_pair(spinor(rng, backend, scale))).components
    else:
        theta = (zero, zero)
    return GaugeParameters(eps, theta)


def generic_params(rng, L: int, backend: str = "float", scale: float = 0.3) -> GaugeParameters:
    """Even eps and odd theta without reality conditions."""
    eps = tuple(grassmann(rng, L, 0, backend, scale) for _ in range(3))
    theta = tuple(grassmann(rng, L, 1, backend, scale) for _ in range(2))
    return GaugeParameters(eps, theta)


def even_supermatrix(rng, row_grading, col_grading, L: int, backend: str = "exact", parity: int = 0,
                     scale: float = 1.0) -> SuperMatrix:
    """Random supermatrix of definite parity (0 even, 1 odd)."""
    p, r = row_grading[0], col_grading[0]
    entries = []
    for i in range(sum(row_grading)):
        row = []
        for j in range(sum(col_grading)):
            diag = (i < p) == (j < r)
            want = parity if diag else 1 - parity
            row.append(grassmann(rng, L, want, backend, scale))
        entries.append(row)
    return SuperMatrix.from_entries(entries, row_grading, col_grading)


def even_supervector(rng, grading=(3, 2), L: int = 2, backend: str = "float", scale: float = 1.0) -> SuperMatrix:
    return even_supermatrix(rng, grading, (1, 0), L, backend, 0, scale)
