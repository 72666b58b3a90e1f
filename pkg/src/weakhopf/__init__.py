"""Exact arithmetic for weak bialgebras, weak Hopf algebras and their weak wreath products."""

from .errors import *  # noqa: F401,F403
from .linalg import DenseMap, LinMap, Space, equal_maps, rank, split_idempotent, trace
from .report import AxiomReport, Check
from .scalars import QQ, Field, cyclotomic_field, make_field, root_of_unity
from .specfile import SpecFile
from .wdl import (
    WeakDistLaw,
    check_wdl,
    check_weak_comonoidal,
    check_weak_inverse,
    derived_identity_suite,
    solve_weak_inverse,
    verify_law,
)
from .wha import (
    NoAntipode,
    WeakBialgebra,
    WeakHopfAlgebra,
    convolve,
    dual,
    projections,
    solve_antipode,
    verify_antipode,
    verify_projections,
    verify_weak_bialgebra,
)
from .wreath import WreathProduct, build_wreath, build_wreath_antipode, wreath_consistency_suite

__version__ = "0.1.0"
