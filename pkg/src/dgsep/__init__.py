"""Exact computations with differential graded algebras and dg-separability."""

from .fields import Field, QQ, GF, characteristic_is_invertible, parse_field
from .algebra import (DgAlgebra, GradedAlgebra, cycles, homology, is_graded_commutative, opposite,
                      same_presentation, validate_algebra, validate_dg)
from .constructions import (AcyclicDivisionSpec, DgExtension, TwistedLaurentSpec, acyclic_division_from_cycles,
                            base_extension, cycle_inclusion, dual_numbers, finite_field, identity_extension,
                            laurent, laurent_pair, scalar_extension, tensor_over_source, tensor_product,
                            truncated_polynomial, twisted_laurent, validate_extension)
from .separability import (NOT_SEPARABLE, SEPARABLE, THEOREM_SILENT, check_main_theorem, classify_gr_division,
                           find_casimir, induced_cycle_extension, is_dg_division, verify_casimir)
from .modules import (NOT_SPLIT, SPLIT, DgModule, ShortExactSequence, cycles_module, find_dg_splitting,
                      free_module, induce_from_cycles, lift_splitting, split_sequence, submodule_sequence,
                      validate_module, validate_ses)

__version__ = "0.1.0"
