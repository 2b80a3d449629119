"""Decompositions of rational functions with at most two poles.

Exact arithmetic over Q and cyclotomic fields, functional decomposition of
polynomials and Laurent polynomials, monodromy tuples and fiber products,
genus formulas, and the classification of double decompositions.
"""

from .errors import RittError, BoundExceeded, InvalidTuple, NotCertified, ConstraintError
from .exact import CycloNum, NumberFieldElem, root_of_unity, kth_roots
from .poly import (Poly, LaurentPoly, RatFunc, compose, compose_all, chebyshev, laurent_D,
                   power, resultant, bivariate_gcd, solve_left_factor)
from .parser import parse, to_text, ParseError
from .decompose import (DecompChain, decompose, decompose_poly, decompose_laurent,
                        canonical_chain, equivalence, solve_zc, symmetry_extract,
                        recognize_power, recognize_chebyshev, recognize_D,
                        common_inner_factor, family_generator, inner_power)
from .monodromy import (MonodromyTuple, builtin_tuple, fiber_product, o_count,
                        block_systems, reduce_pair, genus_of_tuple)
from .genus import (Passport, passport_of_poly, genus_sum_rh0, genus_pair_rh2, s_term,
                    special_values, irreducibility)
from .ritt import (CaseWitness, MoveChain, r2_normalize, decompose_any, classify_double,
                   solve_eq2, solve_posl, detect_special, weak_equivalence, first_ritt_check)

__version__ = "0.1.0"
