"""Complex Grassmann algebra on ``L`` generators.

Monomials are stored as bitmasks: bit ``k-1`` set means generator
``beta_k`` is present, and the stored coefficient multiplies the product of
the present generators in increasing index order.  Two coefficient backends
exist, ``"exact"`` (:class:`~osp12.gaussian.GaussianRational`) and
``"float"`` (builtin ``complex``); a value never mixes them.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .gaussian import GaussianRational

BACKENDS = ("exact", "float")


class GrassmannError(ValueError):
    """Dimension or backend mismatch between Grassmann values."""


class UnsupportedAlgebraError(GrassmannError):
    """The requested operation is not defined for this generator count."""


class ParityError(ValueError):
    """A homogeneous (definite-parity) operand was required."""


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1
    MIXED = 2

    def __add__(self, other: "Parity") -> "Parity":
        if Parity.MIXED in (self, other):
            return Parity.MIXED
        return Parity((self.value + other.value) % 2)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def monomial_product(s: int, t: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``beta_S beta_T = sign * beta_{S|T}``.

    ``sign`` is 0 when the monomials share a generator.  Otherwise it is the
    parity of the number of pairs ``(i in S, j in T)`` with ``i > j``, i.e.
    the transpositions needed to sort the concatenated index list.
    """
    if s & t:
        return 0, 0
    swaps = 0
    rest = s
    while rest:
        low = rest & -rest
        # generators of T strictly below this generator of S must hop over it
        swaps += popcount(t & (low - 1))
        rest ^= low
    return (-1 if swaps & 1 else 1), s | t


def mask_to_indices(mask: int) -> tuple[int, ...]:
    return tuple(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def indices_to_mask(indices: Iterable[int], L: int) -> tuple[int, int]:
    """Normalize an arbitrary index sequence to ``(sign, mask)``.

    Repeated indices give sign 0.
    """
    sign, mask = 1, 0
    for k in indices:
        if not 1 <= k <= L:
            raise GrassmannError(f"generator index {k} outside 1..{L}")
        s, mask = monomial_product(mask, 1 << (k - 1))
        sign *= s
        if not sign:
            return 0, 0
    return sign, mask


def coerce_scalar(value, backend: str):
    if backend == "exact":
        return GaussianRational.coerce(value)
    if backend == "float":
        if isinstance(value, GaussianRational):
            return complex(value)
        if isinstance(value, Fraction):
            return complex(float(value))
        return complex(value)
    raise GrassmannError(f"unknown backend {backend!r}")


@lru_cache(maxsize=None)
def conjugation_table(L: int) -> tuple[tuple[int, int], ...]:
    """Image ``(sign, mask)`` of every monomial under pseudo-conjugation.

    Generators pair up as ``(beta_{2k-1}, beta_{2k})`` with
    ``beta_{2k-1} -> -beta_{2k}`` and ``beta_{2k} -> beta_{2k-1}``; the map is
    extended multiplicatively without reversing the factor order.
    """
    if L % 2:
        raise UnsupportedAlgebraError(f"pseudo-conjugation needs an even generator count, got L={L}")
    table = []
    for mask in range(1 << L):
        sign, image = 1, 0
        for k in mask_to_indices(mask):
            if k % 2:
                g_sign, g_mask = -1, 1 << k  # beta_k -> -beta_{k+1}
            else:
                g_sign, g_mask = 1, 1 << (k - 2)  # beta_k -> beta_{k-1}
            s, image = monomial_product(image, g_mask)
            sign *= s * g_sign
        table.append((sign, image))
    return tuple(table)


class GrassmannNumber:
    """Immutable element of the complex Grassmann algebra on ``L`` generators."""

    __slots__ = ("L", "backend", "_coeffs")

    def __init__(self, L: int, coeffs: Mapping[int, object] | None = None, backend: str = "exact"):
        if L < 0:
            raise GrassmannError("generator count must be non-negative")
        if backend not in BACKENDS:
            raise GrassmannError(f"unknown backend {backend!r}")
        self.L = L
        self.backend = backend
        clean = {}
        for mask, c in (coeffs or {}).items():
            if mask >> L:
                raise GrassmannError(f"monomial {mask_to_indices(mask)} outside L={L}")
            c = coerce_scalar(c, backend)
            if c != 0:
                clean[mask] = c
        self._coeffs = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def scalar(cls, value, L: int, backend: str = "exact") -> "GrassmannNumber":
        return cls(L, {0: value}, backend)

    @classmethod
    def generator(cls, k: int, L: int, backend: str = "exact") -> "GrassmannNumber":
        return cls.monomial((k,), L, backend=backend)

    @classmethod
    def monomial(cls, indices: Iterable[int], L: int, coeff=1, backend: str = "exact") -> "GrassmannNumber":
        sign, mask = indices_to_mask(indices, L)
        if not sign:
            return cls(L, {}, backend)
        return cls(L, {mask: coerce_scalar(coeff, backend) * sign}, backend)

    @classmethod
    def from_terms(cls, L: int, terms: Mapping[tuple[int, ...], object], backend: str = "exact") -> "GrassmannNumber":
        """Build from ``{index tuple: coeff}``; unsorted tuples are reordered with sign."""
        out = cls(L, {}, backend)
        for idx, c in terms.items():
            out = out + cls.monomial(idx, L, c, backend)
        return out

    # -- accessors --------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._coeffs)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        return [(mask_to_indices(m), c) for m, c in sorted(self._coeffs.items())]

    def coeff(self, indices: Iterable[int] = ()) -> object:
        sign, mask = indices_to_mask(indices, self.L)
        zero = coerce_scalar(0, self.backend)
        if not sign:
            return zero
        return self._coeffs.get(mask, zero) * sign

    @property
    def body(self):
        return self._coeffs.get(0, coerce_scalar(0, self.backend))

    @property
    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber(self.L, {m: c for m, c in self._coeffs.items() if m}, self.backend)

    @property
    def parity(self) -> Parity:
        degrees = {popcount(m) % 2 for m in self._coeffs}
        if len(degrees) > 1:
            return Parity.MIXED
        return Parity(degrees.pop()) if degrees else Parity.EVEN

    @property
    def degree(self) -> int:
        p = self.parity
        if p is Parity.MIXED:
            raise ParityError("degree of a mixed-parity Grassmann number is undefined")
        return p.value

    def is_zero(self) -> bool:
        return not self._coeffs

    def max_abs(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def to_float(self) -> "GrassmannNumber":
        return GrassmannNumber(self.L, self._coeffs, "float")

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "GrassmannNumber") -> None:
        if self.L != other.L:
            raise GrassmannError(f"generator counts differ: {self.L} vs {other.L}")
        if self.backend != other.backend:
            raise GrassmannError(f"backends differ: {self.backend} vs {other.backend}")

    def _lift(self, other) -> "GrassmannNumber":
        if isinstance(other, GrassmannNumber):
            self._check(other)
            return other
        return GrassmannNumber.scalar(other, self.L, self.backend)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out[m] + c if m in out else c
        return GrassmannNumber(self.L, out, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannNumber(self.L, {m: -c for m, c in self._coeffs.items()}, self.backend)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[int, object] = {}
        for s, a in self._coeffs.items():
            for t, b in other._coeffs.items():
                sign, m = monomial_product(s, t)
                if sign:
                    term = a * b if sign > 0 else -(a * b)
                    out[m] = out[m] + term if m in out else term
        return GrassmannNumber(self.L, out, self.backend)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = GrassmannNumber.scalar(1, self.L, self.backend)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GrassmannNumber):
            return self.L == other.L and self.backend == other.backend and self._coeffs == other._coeffs
        try:
            return self == self._lift(other)
        except (TypeError, GrassmannError):
            return NotImplemented

    def __hash__(self):
        return hash((self.L, self.backend, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"GrassmannNumber(L={self.L}, 0)"
        parts = []
        for idx, c in self.terms():
            mono = "".join(f"b{k}" for k in idx)
            parts.append(f"({c}){mono}" if mono else f"({c})")
        return f"GrassmannNumber(L={self.L}, {' + '.join(parts)})"

    # -- conjugation ------------------------------------------------------
    def pseudo_conj(self) -> "GrassmannNumber":
        table = conjugation_table(self.L)
        out = {}
        for m, c in self._coeffs.items():
            sign, image = table[m]
            out[image] = c.conjugate() * sign
        return GrassmannNumber(self.L, out, self.backend)

    def parity_split(self) -> tuple["GrassmannNumber", "GrassmannNumber"]:
        even = {m: c for m, c in self._coeffs.items() if popcount(m) % 2 == 0}
        odd = {m: c for m, c in self._coeffs.items() if popcount(m) % 2}
        return GrassmannNumber(self.L, even, self.backend), GrassmannNumber(self.L, odd, self.backend)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for idx, c in self.terms():
            if self.backend == "exact":
                re, im = _frac_str(c.re), _frac_str(c.im)
            else:
                re, im = c.real, c.imag
            terms.append({"indices": list(idx), "re": re, "im": im})
        return {"L": self.L, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping, backend: str | None = None) -> "GrassmannNumber":
        try:
            L = int(obj["L"])
            raw = obj["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise GrassmannError(f"malformed Grassmann JSON: {exc}") from exc
        if backend is None:
            # strings mean exact rationals; bare numbers mean floats
            values = [t.get(k, 0) for t in raw for k in ("re", "im")]
            backend = "exact" if all(isinstance(v, (str, int)) for v in values) else "float"
        out = cls(L, {}, backend)
        for t in raw:
            re, im = t.get("re", 0), t.get("im", 0)
            if backend == "exact":
                c = GaussianRational(Fraction(str(re)), Fraction(str(im)))
            else:
                c = complex(float(Fraction(re)) if isinstance(re, str) else re,
                            float(Fraction(im)) if isinstance(im, str) else im)
            out = out + cls.monomial(t["indices"], L, c, backend)
        return out


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def g_add(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    return a + b


def g_mul(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    return a * b


def pseudo_conj(a: GrassmannNumber) -> GrassmannNumber:
    return a.pseudo_conj()


def parity_split(a: GrassmannNumber) -> tuple[GrassmannNumber, GrassmannNumber]:
    return a.parity_split()
