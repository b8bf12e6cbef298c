"""Fibered bisets as formal objects: pairs, canonical bases, star and Mackey products."""
from .decompose import (
    Decomposition5,
    PairInvariants,
    decompose_standard,
    deflation,
    elementary,
    ind,
    inf,
    iso,
    pair_invariants,
    res,
)
from .element import (
    FiberedElement,
    basis_element,
    change_of_fiber,
    mackey_pairs,
    mackey_product,
    product_many,
)
from .pairs import (
    Ambient,
    FiberPair,
    Invariant,
    ambient,
    canonical_subgroup,
    canonicalize,
    change_of_fiber_pair,
    conjugate_pair,
    covering_filter,
    double_coset_reps,
    identity_pair,
    make_pair,
    opposite,
    standard_basis,
    star_product,
    validate_pair,
)
from .ring import GF, QQ, ZZ, Ring
