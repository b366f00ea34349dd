"""Finite quasigroups, balanced medial-like equations, and linear representations."""

from .abelian import (AbelianGroup, Automorphism, HolomorphismDecomposition,
                      as_abelian_group, automorphisms, canonical_form,
                      cyclic_group, decompose_holomorphism, direct_product,
                      groups_isomorphic, is_holomorphism, split_affine_identity)
from .enumeration import (EnumerationSpec, census_pairs, census_single,
                          count_quasigroups_colwise, count_quasigroups_rowwise,
                          enumerate_quasigroups, run_spec)
from .equations import (BalancedEquation, CatalogEntry, Counterexample,
                        catalog_entry, derive_relation_set, is_belousov,
                        pair_catalog, parse_equation, relation_convention,
                        satisfies, single_catalog)
from .errors import MedialqError, OrderTooLargeError
from .linearize import (EquationReport, LinearRep, PairLinearRep,
                        RelationCheck, affine_table,
                        check_equation_implies_representation, derive_group,
                        linearize_pair, linearize_single, verify_relations)
from .tables import (Mapping, QuasigroupTable, apply_isotopy, check_property,
                     left_divide, principal_isotope, right_divide,
                     table_from_function, validate_table)

__all__ = [name for name in dir() if not name.startswith("_")]
