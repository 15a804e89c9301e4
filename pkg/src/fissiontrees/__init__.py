"""Exact counting and enumeration of fission trees and their derived graphs."""

from .counting import (
    CountTable,
    closed_form_column,
    count_dynkin,
    count_extended,
    count_extended_semisimple,
    count_multisets,
    count_star_equipped,
    count_star_graphs,
    count_supernova_graphs,
    count_table,
    count_trees,
    count_unit_trees,
    count_unit_trees_upto,
    euler_transform,
    partition_number,
    partition_sequence,
    simply_laced_breakdown,
    theta_sequence,
)
from .enumeration import (
    enum_exact,
    enum_extended,
    enum_supernova,
    enum_tame,
    enum_trees_up_to_slope,
)
from .errors import DomainError, PreconditionError, ResourceLimitError, TreeError
from .graphs import (
    Multigraph,
    canonical_form,
    canonical_key,
    complete_multipartite,
    equipped_fission_graph,
    extract_core,
    fission_graph,
    graph_from_json,
    graph_to_json,
    is_dynkin,
    is_fission_graph,
    is_star_shaped,
    is_ultrametric,
    multigraph,
    nca_heights,
    stokes_quiver,
    supernova,
    to_dot,
    tree_from_graph,
)
from .trees import (
    LEAFCOUNT,
    MULT,
    ExtendedTree,
    LevelPresentation,
    TameTree,
    TreeView,
    canonical_shape,
    extended_collapse,
    extended_expand,
    from_level_maps,
    glue_forest,
    is_generic,
    leaf_count,
    mult_view,
    parse_tree,
    rank,
    shift_mult_to_unit,
    shift_unit_to_mult,
    slope,
    split_at_root,
    tame_tree,
    to_level_maps,
    tree_text,
    unit_view,
)

__version__ = "0.1.0"
