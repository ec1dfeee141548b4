"""Discrete stratified Morse theory on finite simplicial complexes."""

from .core import Complex, build_complex, lower_link, sublevel_complex
from .dsmt import (AlgorithmTrace, coarsen, construct_stratification, find_coarser,
                   is_maximal, separating_function, simplify, union_gradient)
from .errors import DSMTError
from .homology import betti, boundary_matrix
from .morse import (VectorField, check_dmf, classify, critical_cells, gradient_of,
                    is_acyclic, morse_chain_complex)
from .pointdata import (extend_dmf, extend_global, extend_stratified, maxf_extension,
                        mean_extension)
from .strat import (Stratification, check_dsmf, classify_stratified, strata_order,
                    validate_stratification)

__version__ = "0.1.0"
