"""Construct and certify tight-cycle-free uniform hypergraphs."""

__version__ = "0.1.0"

from .core import (
    BipartiteGraph,
    Density,
    Hypergraph,
    HypergraphError,
    ParseError,
    TightCycleWitness,
    density_ratio,
    new_bipartite,
    new_hypergraph,
    parse,
    serialize,
    verify_witness,
)
from .detector import (
    BudgetExhausted,
    DetectOptions,
    brute_force_find,
    find_tight_cycle,
    is_tight_cycle_free,
    partite_find,
    tripartite_fast_check,
)
from .girth import GirthGenConfig, generate_high_girth, has_cycle_at_most, shortest_cycle_length
from .packing import PackingFamily, coverage_stats, pack, random_copy
from .constructions import (
    ConstructionReport,
    PipelineParams,
    certify,
    complete_r_partite,
    cone_lift,
    construct_r_uniform,
    paper_construction,
    star,
    sum_product,
    tripartite_from_family,
)
from .extremal import ExtremalCache, ExtremalResult, compare_constructions, exact_extremal, rows_to_csv
