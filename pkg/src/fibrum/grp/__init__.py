"""Finite groups as multiplication tables: construction, subgroups, homomorphisms."""
from .abelian import AbelianStructure, CocycleTable, FinAb, abelian_structure
from .build import (
    abelian,
    alternating,
    build_group,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    direct_product_many,
    from_cayley,
    quaternion,
    symmetric,
    to_cayley,
)
from .catalog import Catalog, catalog_group, small_catalog
from .extension import SectionCocycle, central_extension, extension_coordinates, section_with_cocycle
from .homs import (
    AutomorphismData,
    CharacteristicData,
    all_isomorphisms,
    automorphism_group,
    center,
    characteristic_data,
    derived_elems,
    derived_subgroup,
    extend_hom,
    hom_count_formula,
    homs_to_cyclic,
    isomorphic,
)
from .quotient import quotient_group, section_map, subgroup_table
from .subgroups import Section, SubgroupLattice, normal_subgroups, product_subgroups, sections, subgroup_lattice
from .table import AHom, GroupHom, GroupTable, SubgroupRef
