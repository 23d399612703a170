"""Hecke groups modulo n, Farey coordinates, and the regular maps they carry.

The package enumerates the finite quotients H_q / H_q(n) for q in {3, 4, 6}
with exact arithmetic in Z_n[sqrt(m)], builds the associated regular maps in
two independent models (dart systems on group elements and adjacency graphs
on coordinates mod n), and reconstructs the fundamental 20-gon of the
genus-4 map of type {5, 4} together with its side pairing and vertex
identifications.
"""

from .coords import HFCoord, adjacent, apply_to_coord, cusp_of, enumerate_coords
from .group import (
    EnumerationLimitError,
    FiniteHeckeGroup,
    HeckeParams,
    enumerate_group,
    generators,
    principal_congruence_index,
    s5_permutation_group,
)
from .maps import (
    MapInvariants,
    MapStructure,
    build_algebraic_map,
    build_coordinate_graph,
    correspondence_check,
    is_isomorphic,
    permutation_model_map,
)
from .polygon import (
    BoundarySequence,
    Circuit,
    PairingTable,
    boundary_from_circuit,
    bring_circuit,
    bring_side_pairing,
    coset_domain_check,
    pairing_rule_check,
    search_circuits,
    side_label_analysis,
    validate_circuit,
    vertex_classes,
)

__version__ = "0.1.0"
