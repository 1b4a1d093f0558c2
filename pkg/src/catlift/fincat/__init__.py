"""Finite categories, functors, constructions and brute-force oracles."""

from .category import (
    FinCategory,
    FinFunctor,
    NatTrans,
    Violation,
    composable_pairs,
    constant_functor,
    discrete,
    identity_functor,
    identity_name,
    inverse_functor,
    make_category,
    make_functor,
    ordinal,
    rename,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .classify import (
    ComprehensiveFactorization,
    FunctorClass,
    boo_lift,
    classify_functor,
    comprehensive_factorize,
    dopf_lifts,
    dopf_obstruction,
    find_fillers,
    initial_obstruction,
    is_bijective_on_objects,
    is_discrete_opfibration,
    is_identity_on_objects,
    is_initial,
    orthogonal_lift,
)
from .constructions import (
    Pullback,
    Pushout,
    comma,
    comma_category,
    connected_components,
    discrete_of,
    is_fully_faithful,
    pullback,
    pushout_along_discrete,
)
from .search import ORACLE_GUARD, SizeGuard, enumerate_functors, enumerate_squares, find_isomorphism, is_isomorphic
from . import catalog

__all__ = [name for name in dir() if not name.startswith("_")]
