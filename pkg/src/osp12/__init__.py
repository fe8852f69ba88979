"""osp(1|2; C), UOSp(1|2) and Grassmann-valued supermatrices."""

from .algebra import GaugeParameters, GeneratorSet, generators, graded_bracket, super_killing
from .gaussian import GaussianRational
from .grassmann import GrassmannNumber, Parity, g_add, g_mul, parity_split, pseudo_conj
from .group import GroupElement, bch_second_order, compose, make_element, sm_exp, sm_log
from .spinors import OddSpinor, OrdinarySpinor, build_majorana_pair, extract_vector
from .supermatrix import SuperMatrix, graded_adjoint, scalar_lmul, sm_mul, supertrace, supertranspose

__all__ = [
    "GaugeParameters", "GeneratorSet", "generators", "graded_bracket", "super_killing",
    "GaussianRational", "GrassmannNumber", "Parity", "g_add", "g_mul", "parity_split", "pseudo_conj",
    "GroupElement", "bch_second_order", "compose", "make_element", "sm_exp", "sm_log",
    "OddSpinor", "OrdinarySpinor", "build_majorana_pair", "extract_vector",
    "SuperMatrix", "graded_adjoint", "scalar_lmul", "sm_mul", "supertrace", "supertranspose",
]
