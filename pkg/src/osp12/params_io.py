"""Parameter files for the verification CLI.

Schema::

    {"epsilon": [x, y, z],
     "eta": [[re, im], [re, im]],
     "vartheta": [[re, im], [re, im]]}

Numbers may be JSON numbers or rational strings such as ``"1/3"``.  When
every value is an integer or a string the exact backend is used.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import GaugeParameters
from .gaussian import GaussianRational
from .grassmann import GrassmannNumber
from .spinors import OrdinarySpinor, build_majorana_pair, raised


class ParamFileError(ValueError):
    """Malformed or invalid parameter file."""


@dataclass(frozen=True)
class ParamFile:
    epsilon: tuple
    eta: OrdinarySpinor
    vartheta: OrdinarySpinor
    backend: str

    def params(self) -> GaugeParameters:
        """``(epsilon, theta)`` with ``theta`` the Majorana spinor built from ``eta``."""
        eps = tuple(GrassmannNumber.scalar(e, 2, self.backend) for e in self.epsilon)
        return GaugeParameters(eps, raised(build_majorana_pair(self.eta)).components)

    def partner(self) -> GaugeParameters:
        """Pure-odd parameters with the Majorana spinor built from ``vartheta``."""
        zero = GrassmannNumber(2, {}, self.backend)
        return GaugeParameters((zero,) * 3, raised(build_majorana_pair(self.vartheta)).components)


def _number(x, exact: bool):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise ParamFileError(f"expected a number, got {x!r}")
    try:
        value = Fraction(x) if isinstance(x, (int, str)) else x
    except (ValueError, ZeroDivisionError) as exc:
        raise ParamFileError(f"bad rational {x!r}") from exc
    return value if exact else float(value)


def _exact_ok(obj) -> bool:
    if isinstance(obj, list):
        return all(_exact_ok(x) for x in obj)
    return isinstance(obj, (int, str)) and not isinstance(obj, bool)


def _spinor(raw, name: str, exact: bool) -> OrdinarySpinor:
    if not (isinstance(raw, list) and len(raw) == 2 and all(isinstance(c, list) and len(c) == 2 for c in raw)):
        raise ParamFileError(f"{name} must be [[re, im], [re, im]]")
    comps = []
    for re, im in raw:
        re, im = _number(re, exact), _number(im, exact)
        comps.append(GaussianRational(re, im) if exact else complex(re, im))
    return OrdinarySpinor.of(*comps, backend="exact" if exact else "float")


def parse_params(obj) -> ParamFile:
    if not isinstance(obj, dict):
        raise ParamFileError("parameter file must hold a JSON object")
    missing = {"epsilon", "eta", "vartheta"} - set(obj)
    if missing:
        raise ParamFileError(f"missing keys: {sorted(missing)}")
    exact = _exact_ok([obj["epsilon"], obj["eta"], obj["vartheta"]])
    raw_eps = obj["epsilon"]
    if not (isinstance(raw_eps, list) and len(raw_eps) == 3):
        raise ParamFileError("epsilon must be a list of three numbers")
    eps = []
    for e in raw_eps:
        if isinstance(e, list):
            # a complex pair is accepted only to reject a nonzero imaginary part explicitly
            if len(e) != 2:
                raise ParamFileError("complex epsilon entries must be [re, im]")
            re, im = _number(e[0], exact), _number(e[1], exact)
            if im != 0:
                raise ParamFileError("epsilon must be real (invariant under pseudo-conjugation)")
            eps.append(re)
        else:
            eps.append(_number(e, exact))
    backend = "exact" if exact else "float"
    pf = ParamFile(tuple(eps), _spinor(obj["eta"], "eta", exact), _spinor(obj["vartheta"], "vartheta", exact), backend)
    for g in pf.params().epsilon:
        if g.pseudo_conj() != g:
            raise ParamFileError("epsilon must be invariant under pseudo-conjugation")
    return pf


def load_param_file(path: str | Path) -> ParamFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParamFileError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParamFileError(f"{path} is not valid JSON: {exc}") from exc
    return parse_params(obj)


def ingest_params(path: str | Path) -> GaugeParameters:
    return load_param_file(path).params()
