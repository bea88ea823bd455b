"""Exact Koszul duality computations for quadratic monomial algebras."""

from .algebra import (AlgebraError, MonomialAlgebra, Quiver, Word, count_paths, format_algebra,
                      is_finite_dimensional, is_radical_square_zero, koszul_dual, make_algebra,
                      multiply_words, opposite_algebra, parse_algebra)
from .complexes import FreeComplex, ModuleComplex, DoubleComplex, total_complex
from .expressions import parse_module
from .koszul import (F_on_complex, cokoszul_G, find_linear_truncation, koszul_K,
                     koszul_certificate, roundtrip_check)
from .modules import GradedModule, GradedMorphism, shift, truncate
from .resolution import (linearity_defect, minimal_injective_coresolution,
                         minimal_projective_resolution, syzygy_decomposition)
from .series import (RationalSeries, hilbert_algebra_closed, hilbert_module_closed,
                     hilbert_reciprocity_check, poincare_closed)
from .suite import run_suite

__version__ = "0.1.0"
