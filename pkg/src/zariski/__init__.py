"""Zariski topology on abelian groups: closed sets, round sets, closures and their realization."""
from .closed import (
    AlgebraicSet,
    canonicalize,
    connected_components,
    dim,
    irreducible_components,
    is_irreducible,
    same_set,
)
from .cosets import EMPTY, Coset, coset, torsion_coset, whole_group
from .groups import (
    OMEGA,
    DomainError,
    Element,
    GroupDescriptor,
    cyclic_group,
    essential_order,
    exponent,
    free_group,
    is_irreducible_torsion,
    quasicyclic_group,
    rational_group,
    torsion_subgroup,
)
from .realization import CharacterEmbedding, build_characters, realize_closure, verify_density
from .rounds import certify_round, make_round, scale_generator, split_trim
from .sets import (
    DescribedSet,
    big_m,
    closure,
    components_of_set,
    dim_of_set,
    is_curve,
    is_dense,
    is_potentially_dense,
    little_m,
)
from .syntax import ParseError, parse_element, parse_group, parse_set, print_element, print_group, print_set

__all__ = [
    "AlgebraicSet",
    "CharacterEmbedding",
    "Coset",
    "DescribedSet",
    "DomainError",
    "EMPTY",
    "Element",
    "GroupDescriptor",
    "OMEGA",
    "ParseError",
    "big_m",
    "build_characters",
    "canonicalize",
    "certify_round",
    "closure",
    "components_of_set",
    "connected_components",
    "coset",
    "cyclic_group",
    "dim",
    "dim_of_set",
    "essential_order",
    "exponent",
    "free_group",
    "irreducible_components",
    "is_curve",
    "is_dense",
    "is_irreducible",
    "is_irreducible_torsion",
    "is_potentially_dense",
    "little_m",
    "make_round",
    "parse_element",
    "parse_group",
    "parse_set",
    "print_element",
    "print_group",
    "print_set",
    "quasicyclic_group",
    "rational_group",
    "realize_closure",
    "same_set",
    "scale_generator",
    "split_trim",
    "torsion_coset",
    "torsion_subgroup",
    "verify_density",
    "whole_group",
]
