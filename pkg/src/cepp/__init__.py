"""Cost-efficient placement of integration processes on container catalogs.

The pipeline: model processes as pattern graphs (:mod:`cepp.graph`),
optionally rewrite them into cheaper equivalents (:mod:`cepp.rewrite`),
flatten workloads into placement items (:mod:`cepp.workload`), and assign
items to priced container variants exactly or heuristically
(:mod:`cepp.model`, :mod:`cepp.heuristic`). ``ceppc`` exposes all of it on
the command line; :mod:`cepp.service` serves the interactive modeling loop.
"""
from .catalog import Catalog, load_catalog, load_catalog_dir, parse_catalog
from .graph import (
    Contract,
    GraphBuilder,
    InvalidGraph,
    IPCG,
    PatternCharacteristics,
    PatternNode,
    PatternType,
    ValidationReport,
    Violation,
    analyze_unused_elements,
    ipcg_to_dict,
    isomorphic,
    match_contracts,
    parse_ipcg,
    process_capacity,
    process_shareable,
    serialize_ipcg,
    validate_ipcg,
    validate_iptg,
)
from .heuristic import (
    EmptyCatalog,
    ItemTooLarge,
    SearchConfig,
    efficiency_order,
    ffd_placement,
    local_search,
    prune_dominated_variants,
)
from .model import (
    ContainerVariant,
    Infeasible,
    Placement,
    PlacementItem,
    ProblemInstance,
    TooLarge,
    ZERO_VARIANT,
    check_feasible,
    conflicts,
    export_lp,
    format_eur,
    hosting_baseline,
    placement_to_json,
    solve_exact,
    to_cents,
    total_cost,
)
from .rewrite import (
    Match,
    Proposal,
    RewriteResult,
    RuleId,
    apply_match,
    apply_proposal,
    decompose,
    enumerate_proposals,
    find_matches,
    improve,
    verify_rewrite,
)
from .workload import (
    GeneratorSpec,
    GraphSpec,
    NamedGraph,
    UnassignedTenant,
    Workload,
    flatten,
    generate,
    generate_graph,
    generate_graphs,
    load_region_map,
    load_workload,
    parse_workload,
    partition_by_region,
    workload_to_json,
)

__version__ = "0.1.0"
