"""Intersection numbers of finite permutation groups.

ι(G) is the least number of maximal subgroups of G whose intersection is the
Frattini subgroup Φ(G); ι̂(G) asks for pairwise non-conjugate ones.
"""

__version__ = "0.1.0"

from .catalog import (
    alternating, build, cyclic, dicyclic, dihedral, direct_product, elementary_abelian,
    frobenius, parse_group_spec, symmetric,
)
from .config import Config
from .errors import BoundExceededError, FrattiniError, NotASubgroupError, WitnessInputError
from .invariants import (
    INFINITY, InvariantResult, WitnessFamily, frobenius_invariants, iota_dicyclic_formula,
    iota_dihedral_formula, iota_exact, iota_hat_dihedral_formula, iota_hat_exact,
    iota_nilpotent_formula, is_irredundant, product_bound_check, quotient_invariance_check,
    symmetric_upper_bound, verify_witness_family,
)
from .lattice import (
    all_subgroups, are_conjugate, frattini, is_maximal, is_nilpotent, maximal_subgroups,
    p_rank, subgroup_intersection, sylow_subgroup,
)
from .perm import (
    Permutation, PermGroup, closure, compose, conjugate_subgroup, contains, coset_action,
    elements, group_from_generators, order, perm_from_cycles,
)
from .symmetric import symmetric_witnesses

__all__ = [
    "WitnessInputError",
    "NotASubgroupError",
    "FrattiniError",
    "BoundExceededError",
    "Config",
    "INFINITY",
    "InvariantResult",
    "PermGroup",
    "Permutation",
    "WitnessFamily",
    "all_subgroups",
    "alternating",
    "are_conjugate",
    "build",
    "closure",
    "compose",
    "conjugate_subgroup",
    "contains",
    "coset_action",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "elementary_abelian",
    "elements",
    "frattini",
    "frobenius",
    "frobenius_invariants",
    "group_from_generators",
    "iota_dicyclic_formula",
    "iota_dihedral_formula",
    "iota_exact",
    "iota_hat_dihedral_formula",
    "iota_hat_exact",
    "iota_nilpotent_formula",
    "is_irredundant",
    "is_maximal",
    "is_nilpotent",
    "maximal_subgroups",
    "order",
    "p_rank",
    "parse_group_spec",
    "perm_from_cycles",
    "product_bound_check",
    "quotient_invariance_check",
    "subgroup_intersection",
    "sylow_subgroup",
    "symmetric",
    "symmetric_upper_bound",
    "symmetric_witnesses",
    "verify_witness_family",
]
