"""Loops and cycles in supersingular isogeny graphs at the neighbours of CM curves."""
from .errors import *  # noqa: F401,F403
from .field import FieldContext, Fp2Element, default_def_poly, default_field, is_prime, make_field, next_prime
from .modpoly import ModularPolynomial, get_modpoly, load_modpoly, parse_modpoly, specialize, symmetry_check
from .poly import DEFAULT_SEED, Poly, RootMultiset, poly_gcd, root_multiplicity, roots_in_fp2
from .quadorder import (
    BQForm,
    Kind,
    QuadOrder,
    SplitWitness,
    UnitClass,
    class_number,
    class_ratio,
    compose,
    cornacchia,
    form_order_of_L,
    kronecker,
    order_m,
    reduce_form,
)
from .ssgraph import (
    Cycle,
    IsogenyGraph,
    cm_seed,
    count_isogenies,
    enumerate_supersingular,
    induced_subgraph,
    is_supersingular,
    neighbors,
    simple_cycles,
    supersingular_count,
)
from .theorems import (
    CorollaryCase,
    PredictionReport,
    Theorem5Report,
    construct_cycles,
    corollary51_case,
    lemma2_counts,
    theorem5_check,
)

__version__ = "0.1.0"
