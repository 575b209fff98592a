"""Syntactic-semigroup computations for the reducts of A+(B_n)."""
from .affine import APlusBn, construct_a_plus_bn
from .brandt import THETA, brandt_semigroup
from .semigroup import (Congruence, FiniteSemigroup, adjoin_identity, find_isomorphism,
                        is_aperiodic, principal_congruence, quotient, validate_semigroup)
from .syntactic import (ContextMode, decide_syntactic, is_disjunctive, subset_d, subset_p,
                        syntactic_congruence)

__version__ = "0.1.0"
