"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines appear in the normal output) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import all_subsets, bubble_sign  # noqa: E402

from osp12 import sampling  # noqa: E402
from osp12.algebra import expected_gram, generators, killing_gram  # noqa: E402
from osp12.grassmann import GrassmannNumber  # noqa: E402
from osp12.report import EXACT_ZERO  # noqa: E402
from osp12.suites import SuiteConfig, run_suite  # noqa: E402

SEED = 7

# pinned tolerances
TOL_ALGEBRA = 1e-12      # M^dagger + M, U(p)U(-p) - I, bar covariance
TOL_GROUP = 1e-10        # U^dagger U - I, subgroup law
SLOPE_RANGE = (2.8, 3.4)
SCALES = (0.1, 0.03, 0.01)
TIME_BUDGET = 60.0       # seconds per criterion

# sample counts
N_REALITY = 1000
N_UNITARITY = 200
N_BCH = 200              # two thirds carry odd parts; every pair counts toward the >= 50
N_REPRESENTATION = 200
N_DIAMOND = 1000


def _suite(name, **kw):
    (rep,) = run_suite(name, SuiteConfig(seed=SEED, **kw))
    return rep


def _all_exact_zero(rep):
    return all(c.to_json()["residual"] == EXACT_ZERO for c in rep.checks)


def c1_defining_relations():
    rep = _suite("defining-relations", backend="exact")
    return rep.passed and _all_exact_zero(rep), f"{len(rep.checks)} bracket identities, all exact-zero"


def c2_killing_form():
    gram_ok = np.array_equal(killing_gram(generators(L=0)), expected_gram())
    rep = _suite("killing-form", backend="exact")
    return gram_ok and rep.passed and _all_exact_zero(rep), "Gram = blockdiag(delta, i eps) exactly"


def c3_grade_star():
    rep = _suite("grade-star", backend="exact")
    return rep.passed and _all_exact_zero(rep), f"{len(rep.checks)} graded-adjoint identities exact"


def c4_reality():
    rep = _suite("reality-vector", samples=N_REALITY, backend="exact")
    random_pairs = rep.meta["pairs"] - rep.meta["degenerate_pairs"]
    ok = rep.passed and random_pairs >= 1000 and _all_exact_zero(rep)
    return ok, f"{rep.meta['pairs']} pairs ({random_pairs} random), Im v = 0 exactly, iff holds on sample"


def c5_unitarity():
    rep = _suite("unitarity", samples=N_UNITARITY, tolerance=TOL_GROUP)
    anti, left, right = rep.checks[0], rep.checks[1], rep.checks[2]
    ok = (rep.passed and anti.residual < TOL_ALGEBRA and left.residual < TOL_GROUP
          and right.residual < TOL_GROUP)
    return ok, f"M^dag+M {anti.residual:.1e}, U^dag U - I {left.residual:.1e} over {N_UNITARITY} sets"


def c6_inverse_subgroup():
    inv = _suite("inverse-law", samples=N_UNITARITY)
    sub = _suite("subgroup", samples=N_UNITARITY, tolerance=TOL_GROUP)
    inv_res, sub_res = inv.checks[0].residual, sub.checks[0].residual
    ok = inv.passed and sub.passed and inv_res < TOL_ALGEBRA and sub_res < TOL_GROUP
    return ok, f"U(p)U(-p)-I {inv_res:.1e}, subgroup {sub_res:.1e}"


def c7_bch_order():
    rep = _suite("bch-order", samples=N_BCH, scales=SCALES)
    slope_check, commuting = rep.checks[0], rep.checks[1]
    fitted = int(slope_check.name.split("(")[1].split()[0])
    lo, hi = rep.meta["min_slope"], rep.meta["max_slope"]
    ok = (rep.passed and fitted >= 50 and SLOPE_RANGE[0] <= lo and hi <= SLOPE_RANGE[1] and commuting.passed)
    return ok, f"{fitted} pairs, slopes in [{lo:.3f}, {hi:.3f}], commuting residual {commuting.residual:.1e}"


def c8_representation():
    rep = _suite("representation-action", samples=N_REPRESENTATION)
    cov = rep.checks[1]
    return rep.passed and cov.residual < TOL_ALGEBRA, f"bar covariance {cov.residual:.1e} over {N_REPRESENTATION}"


def c9_grassmann_oracle():
    pairs, bad = 0, 0
    for L in range(0, 7):
        subs = all_subsets(L)
        mono = {s: GrassmannNumber.monomial(s, L) for s in subs}
        for s in subs:
            for t in subs:
                sign, merged = bubble_sign(s + t)
                got = mono[s] * mono[t]
                want = GrassmannNumber(L) if sign == 0 else GrassmannNumber.monomial(merged, L, sign)
                bad += got != want
                pairs += 1
    return bad == 0, f"{pairs} monomial pairs for L <= 6 (4096 at L=6), {bad} mismatches"


def c10_pseudo_conj():
    rng = sampling.rng_for(SEED)
    bad = 0
    for _ in range(N_DIAMOND):
        p, q = (int(x) for x in rng.integers(0, 2, size=2))
        a = sampling.grassmann(rng, 4, p, "exact", density=0.6)
        b = sampling.grassmann(rng, 4, q, "exact", density=0.6)
        bad += a.pseudo_conj().pseudo_conj() != a * (-1) ** p
        bad += (a * b).pseudo_conj() != a.pseudo_conj() * b.pseudo_conj()
    for r, e in [(Fraction(2, 3), Fraction(-5, 7)), (0, 1), (1, 0)]:
        x = GrassmannNumber.scalar(r, 2) + GrassmannNumber.monomial((1, 2), 2, e)
        bad += x.pseudo_conj() != x
    return bad == 0, f"{N_DIAMOND} homogeneous pairs, real-even closure, {bad} violations"


CRITERIA = [
    ("1 defining relations", c1_defining_relations),
    ("2 super-Killing form", c2_killing_form),
    ("3 grade-star hermiticity", c3_grade_star),
    ("4 bilinear vector reality", c4_reality),
    ("5 graded unitarity", c5_unitarity),
    ("6 inverse law and subgroup", c6_inverse_subgroup),
    ("7 BCH truncation order", c7_bch_order),
    ("8 representation covariance", c8_representation),
    ("9 Grassmann kernel oracle", c9_grassmann_oracle),
    ("10 pseudo-conjugation laws", c10_pseudo_conj),
]


def evaluate(label, fn):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < TIME_BUDGET
    line = f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail} [{elapsed:.1f}s]"
    return ok, line


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, fn, capsys):
    ok, line = evaluate(label, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(label, fn) for label, fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
