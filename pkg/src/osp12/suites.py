"""Named verification suites run by the CLI."""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, group, sampling, spinors
from .algebra import GaugeParameters, algebra_element, generators
from .grassmann import GrassmannNumber
from .params_io import ParamFile
from .report import Check, VerificationReport
from .supermatrix import SuperMatrix, distance, graded_adjoint, sm_mul

ALGEBRA_TOL = 1e-12


@dataclass
class SuiteConfig:
    tolerance: float = 1e-10
    samples: int = 200
    seed: int = 0
    scales: tuple[float, ...] = (0.1, 0.03, 0.01)
    params: ParamFile | None = None
    backend: str | None = None


class UnsupportedBackend(ValueError):
    pass


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[SuiteConfig, str], VerificationReport]
    default_backend: str
    backends: tuple[str, ...]
    description: str = ""


def _rng(config: SuiteConfig, name: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([config.seed, zlib.crc32(name.encode())]))


def _aggregate(name: str, residuals, tol: float) -> Check:
    worst = max(residuals, default=0.0)
    return Check.numeric(name, worst, tol)


# -- algebra suites ---------------------------------------------------------

def _defining(config: SuiteConfig, backend: str) -> VerificationReport:
    return algebra.verify_defining_relations(generators(0, backend), ALGEBRA_TOL)


def _killing(config: SuiteConfig, backend: str) -> VerificationReport:
    return algebra.verify_killing_form(generators(0, backend), ALGEBRA_TOL)


def _grade_star(config: SuiteConfig, backend: str) -> VerificationReport:
    return algebra.grade_star_check(generators(0, backend), ALGEBRA_TOL)


def _jacobi(config: SuiteConfig, backend: str) -> VerificationReport:
    return algebra.verify_jacobi(generators(0, backend), ALGEBRA_TOL)


# -- spinor suite -----------------------------------------------------------

def _reality(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "reality-vector")
    pairs = []
    for _ in range(config.samples):
        pairs.append((sampling.spinor(rng, backend), sampling.spinor(rng, backend)))
    # the degenerate locus is sampled on purpose so both directions of the iff are exercised
    n_special = max(1, config.samples // 20)
    for _ in range(n_special):
        eta = sampling.spinor(rng, backend)
        pairs.append((eta, eta))
        pairs.append((eta, -eta))
    if config.params is not None:
        pf = config.params
        pairs.append((pf.eta, pf.vartheta) if pf.backend == backend else (pf.eta.to_float(), pf.vartheta.to_float()))

    imag, agree, antisym, bracket, iff_violations = [], [], [], [], 0
    exact = backend == "exact"
    for eta, vt in pairs:
        xi, th = spinors.build_majorana_pair(eta), spinors.build_majorana_pair(vt)
        v = spinors.extract_vector(xi, th)
        w = spinors.majorana_vector(eta, vt)
        _, im = spinors.check_reality(v)
        imag.append(im)
        agree.append(max(abs(complex(a - b)) for a, b in zip(v, w)))
        back = spinors.extract_vector(th, xi)
        antisym.append(max(abs(complex(a + b)) for a, b in zip(v, back)))
        # literal commutator [xi^A, theta^B] (sigma^a)_{AB} = 2 xi^A theta^B (sigma^a)_{AB}
        bil = spinors.odd_bilinear(xi, th)
        b12 = GrassmannNumber.monomial((1, 2), 2, backend=backend)
        bracket.append(max((b * 2 - b12 * (vv * 2)).max_abs() for b, vv in zip(bil, v)))
        is_zero = all(x == 0 for x in v) if exact else max(abs(complex(x)) for x in v) <= 1e-13
        plus_minus = eta.components == vt.components or eta.components == (-vt).components
        if is_zero != plus_minus:
            iff_violations += 1

    def check(name, values):
        if exact:
            return Check.exact(name, max(values, default=0.0) == 0, max(values, default=0.0))
        return _aggregate(name, values, 1e-13)

    checks = [
        check(f"Im v^a = 0 ({len(pairs)} Majorana pairs)", imag),
        check("bilinear route equals component formula", agree),
        check("antisymmetry v(xi,theta) = -v(theta,xi)", antisym),
        check("[xi^A,theta^B] sigma^a_AB = 2 b1b2 v^a", bracket),
        Check.exact("v = 0 iff eta = +-vartheta on sampled set", iff_violations == 0, float(iff_violations)),
    ]
    eps_ok = all(r == 0 for r in spinors.epsilon_identity_residuals())
    checks.append(Check.exact("eps_AB eps_CD + eps_AC eps_DB + eps_AD eps_BC = 0", eps_ok))
    return VerificationReport("reality-vector", backend, checks,
                              meta={"pairs": len(pairs), "degenerate_pairs": 2 * n_special})


# -- group suites -----------------------------------------------------------

def _file_params(config: SuiteConfig) -> list[GaugeParameters]:
    if config.params is None:
        return []
    return [config.params.params().to_float()]


def _bch(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "bch-order")
    pairs = []
    n = config.samples
    for j in range(n):
        odd = j % 3 != 0  # one third even-only
        pairs.append((sampling.majorana_params(rng, odd=odd), sampling.majorana_params(rng, odd=odd)))
    if config.params is not None:
        pairs.append((config.params.params().to_float(), config.params.partner().to_float()))
    slopes, failures = [], 0
    for k, p in pairs:
        try:
            est = group.bch_order_check(k, p, config.scales)
        except group.ConvergenceError:
            failures += 1
            continue
        if est.exact:
            continue
        slopes.append(est.slope)
    commuting = []
    for _ in range(max(1, n // 10)):
        p = sampling.majorana_params(rng)
        c = float(rng.uniform(-2, 2))
        try:
            est = group.bch_order_check(p.scaled(c), p, config.scales)
            commuting.append(max(est.residuals) if est.exact else float("inf"))
        except group.ConvergenceError:
            commuting.append(float("inf"))
    worst = max((abs(s - 3.0) for s in slopes), default=0.0)
    in_range = failures == 0 and all(2.8 <= s <= 3.4 for s in slopes)
    checks = [
        Check(f"log-log slope in [2.8, 3.4] ({len(slopes)} pairs)", worst, in_range),
        Check.numeric(f"commuting pairs agree exactly ({len(commuting)} pairs)", max(commuting), group.EXACT_FLOOR),
    ]
    # cross term sign: kappa=(a,0,0), eps=(0,b,0) -> eps'^3 = -ab/2 against the logarithm
    a, b = 0.01, 0.02
    kk = GaugeParameters.from_vector([a, 0, 0])
    pp = GaugeParameters.from_vector([0, b, 0])
    pred = group.bch_second_order(kk, pp)
    checks.append(Check.numeric("second-order law eps' = (a, b, -ab/2)",
                                max(abs(complex(e.body) - w) for e, w in zip(pred.epsilon, (a, b, -a * b / 2))),
                                ALGEBRA_TOL))
    meta = {"scales": list(config.scales), "convergence_failures": failures}
    if slopes:
        meta.update(min_slope=min(slopes), max_slope=max(slopes), mean_slope=float(np.mean(slopes)))
    return VerificationReport("bch-order", backend, checks, meta=meta)


def _unitarity(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "unitarity")
    params = [sampling.majorana_params(rng, scale=1.0) for _ in range(config.samples)] + _file_params(config)
    anti, left, right = [], [], []
    elements = []
    for p in params:
        g = group.make_element(p)
        rep = group.graded_unitarity_check(g, config.tolerance, ALGEBRA_TOL)
        anti.append(rep.checks[0].residual)
        left.append(rep.checks[1].residual)
        right.append(rep.checks[2].residual)
        elements.append(g)
    closure = []
    for g, h in zip(elements[::2], elements[1::2]):
        gh = group.compose(g, h)
        I = SuperMatrix.identity(gh.U.row_grading, gh.U.L, "float")
        closure.append(distance(sm_mul(graded_adjoint(gh.U), gh.U), I))
    # control: a theta violating the Majorana relation must be caught
    bad = spinors.compose_odd(spinors.OrdinarySpinor.of(1, 0, backend="float"),
                              spinors.OrdinarySpinor.of(1, 0, backend="float"))
    zero = GrassmannNumber(2, {}, "float")
    Mbad = algebra_element(GaugeParameters((zero,) * 3, spinors.raised(bad).components))
    bad_resid = (graded_adjoint(Mbad) + Mbad).max_abs()
    checks = [
        _aggregate(f"M^dagger + M ({len(params)} Majorana sets)", anti, ALGEBRA_TOL),
        _aggregate("U^dagger U - I", left, config.tolerance),
        _aggregate("U U^dagger - I", right, config.tolerance),
        _aggregate(f"products stay graded unitary ({len(closure)} pairs)", closure, config.tolerance),
        Check("non-Majorana theta breaks M^dagger = -M", bad_resid, bad_resid > 1e-3),
    ]
    return VerificationReport("unitarity", backend, checks)


def _inverse(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "inverse-law")
    params = [sampling.majorana_params(rng, scale=1.0) for _ in range(config.samples)] + _file_params(config)
    inv, neumann, roundtrip = [], [], []
    for p in params:
        g, g_inv = group.make_element(p), group.make_element(-p)
        I = SuperMatrix.identity(g.U.row_grading, g.U.L, "float")
        inv.append(max(distance(sm_mul(g.U, g_inv.U), I), distance(sm_mul(g_inv.U, g.U), I)))
        neumann.append(distance(group.sm_inv(g.U), g_inv.U))
        small = p.scaled(0.3)
        back = group.make_element(small).parameters()
        roundtrip.append((back - small).max_abs())
    checks = [
        _aggregate(f"U(p) U(-p) - I ({len(params)} sets)", inv, ALGEBRA_TOL),
        _aggregate("U(p)^-1 - U(-p)", neumann, ALGEBRA_TOL),
        _aggregate("parameters(log U(p)) - p", roundtrip, config.tolerance),
    ]
    return VerificationReport("inverse-law", backend, checks)


def _subgroup(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "subgroup")
    params = [sampling.majorana_params(rng, scale=1.0) for _ in range(config.samples)] + _file_params(config)
    flow, assoc = [], []
    for p in params:
        for t in (0.1, 0.2):
            for s in (0.1, 0.2):
                lhs = sm_mul(group.make_element(p.scaled(t)).U, group.make_element(p.scaled(s)).U)
                flow.append(distance(lhs, group.make_element(p.scaled(t + s)).U))
    for a, b, c in zip(params[::3], params[1::3], params[2::3]):
        A, B, C = (group.make_element(x).U for x in (a, b, c))
        assoc.append(distance(sm_mul(sm_mul(A, B), C), sm_mul(A, sm_mul(B, C))))
    checks = [
        _aggregate(f"U(tp) U(sp) - U((t+s)p) ({len(params)} sets)", flow, config.tolerance),
        _aggregate("associativity", assoc, ALGEBRA_TOL),
    ]
    return VerificationReport("subgroup", backend, checks)


def _representation(config: SuiteConfig, backend: str) -> VerificationReport:
    rng = _rng(config, "representation-action")
    params = [sampling.majorana_params(rng, scale=1.0) for _ in range(config.samples)] + _file_params(config)
    covariance, blockwise, closure = [], [], 0
    for p in params:
        g = group.make_element(p)
        psi = sampling.even_supervector(rng)
        out = group.apply(g, psi)
        closure += out.parity.name != "EVEN"
        lhs = group.dirac_bar(out)
        rhs = sm_mul(group.dirac_bar(psi), graded_adjoint(g.U))
        covariance.append(distance(lhs, rhs))
        A, B, C, D = (SuperMatrix(x, *gr, 2, "float") for x, gr in zip(
            g.U.blocks(), (((3, 0), (3, 0)), ((3, 0), (0, 2)), ((0, 2), (3, 0)), ((0, 2), (0, 2)))))
        top = SuperMatrix(psi.data[:, :3], (3, 0), (1, 0), 2, "float")
        bottom = SuperMatrix(psi.data[:, 3:], (0, 2), (1, 0), 2, "float")
        new_top = sm_mul(A, top) + sm_mul(B, bottom)
        new_bottom = sm_mul(C, top) + sm_mul(D, bottom)
        blockwise.append(max(np.max(np.abs(new_top.data - out.data[:, :3])),
                             np.max(np.abs(new_bottom.data - out.data[:, 3:]))))
    checks = [
        Check.exact(f"U Psi stays even ({len(params)} vectors)", closure == 0, float(closure)),
        _aggregate("bar(U Psi) - bar(Psi) U^dagger", covariance, ALGEBRA_TOL),
        _aggregate("blockwise A Psi1 + B Psi2 | C Psi1 + D Psi2", blockwise, ALGEBRA_TOL),
    ]
    return VerificationReport("representation-action", backend, checks)


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("defining-relations", _defining, "exact", ("exact", "float"), "brackets of the adjoint generators"),
    Suite("killing-form", _killing, "exact", ("exact", "float"), "Gram matrix, supersymmetry, invariance"),
    Suite("grade-star", _grade_star, "exact", ("exact", "float"), "graded adjoints of the generators"),
    Suite("jacobi", _jacobi, "exact", ("exact", "float"), "graded Jacobi identity on generator triples"),
    Suite("reality-vector", _reality, "exact", ("exact", "float"), "Majorana bilinear vector is real"),
    Suite("bch-order", _bch, "float", ("float",), "second-order composition law error order"),
    Suite("unitarity", _unitarity, "float", ("float",), "graded anti-hermiticity and unitarity"),
    Suite("inverse-law", _inverse, "float", ("float",), "U(p)^-1 = U(-p)"),
    Suite("subgroup", _subgroup, "float", ("float",), "one-parameter subgroup law"),
    Suite("representation-action", _representation, "float", ("float",), "action and Dirac-bar covariance"),
)}


def run_suite(name: str, config: SuiteConfig | None = None) -> list[VerificationReport]:
    """Run one suite, or every suite for ``"all"``."""
    config = config or SuiteConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}")
    reports = []
    for n in names:
        suite = SUITES[n]
        backend = config.backend or suite.default_backend
        if backend not in suite.backends:
            if name == "all":
                backend = suite.default_backend
            else:
                raise UnsupportedBackend(f"suite {n} does not support the {backend} backend")
        report = suite.run(config, backend)
        report.seed = config.seed
        report.meta = {"prng": sampling.PRNG, **report.meta}
        reports.append(report)
    return reports
