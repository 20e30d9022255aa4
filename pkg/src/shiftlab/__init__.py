"""shiftlab: block counting, entropy estimation, and independence searches
for shift spaces on lines, grids, and finitely generated trees."""

from .errors import (
    CapExceeded,
    ConfigError,
    DeadEnd,
    DeadSymbol,
    DomainError,
    EmptyBase,
    EmptyLanguage,
    NotHereditary,
    NotUnexpandable,
    NoWitness,
    PreconditionViolated,
    ShiftLabError,
)
from .words import (
    Alphabet,
    Entropy1D,
    MaxIndep1D,
    ShiftSpec1D,
    WordAutomaton,
    block_counts,
    blocks_1d,
    count_blocks_1d,
    entropy_est_1d,
    hereditary_closure,
    is_hereditary_upto,
    is_indep_1d,
    max_indep_J,
    word_from_str,
    word_to_str,
)
from .shatter import (
    BinaryFamily,
    TailBound,
    binary_entropy,
    count_shattered,
    entropy_tail_bound,
    extract_shattered,
    is_shattered,
)
from .grids import (
    Entropy2D,
    GridBlock,
    GridPositionSet,
    Indep2DWitness,
    MaxSymbolBlock,
    ShiftSpec2D,
    UpperDensity2D,
    blocks_2d,
    count_blocks_2d,
    count_symbol,
    entropy_est_2d,
    fr_estimate,
    indep_witness_2d,
    is_indep_2d,
    max_symbol_block,
    pattern_from_rows,
    prefix_regular_block,
    upper_density_grid,
)
from .trees import (
    AdjacencyMatrix,
    ExpandingNumber,
    SinkDecomposition,
    TreeGeometry,
    entering_counts,
    expanding_number,
    level_sizes,
    sink_decomposition,
    sink_level_counts,
    spectral_radius,
)
from .treeshifts import (
    BipResult,
    EntropyChain,
    LevelParity,
    MaxIndepEstimate,
    SinkLiftSet,
    SurfaceEntropy,
    TreeDensity,
    TreeEntropy,
    TreeShiftSpec,
    VertexSet,
    bip_search,
    count_patterns,
    distinct_restrictions,
    entropy_chain,
    is_indep_tree,
    make_tree_shift,
    max_indep_est,
    ray_vertices,
    sink_lift,
    surface_entropy_est,
    tree_density,
    tree_entropy_est,
)
from .harness import (
    Assertion,
    ExperimentConfig,
    Report,
    emit_report,
    reproduce,
    run_config,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AdjacencyMatrix",
    "Assertion",
    "BinaryFamily",
    "BipResult",
    "CapExceeded",
    "ConfigError",
    "DeadEnd",
    "DeadSymbol",
    "DomainError",
    "EmptyBase",
    "EmptyLanguage",
    "Entropy1D",
    "Entropy2D",
    "EntropyChain",
    "ExpandingNumber",
    "ExperimentConfig",
    "GridBlock",
    "GridPositionSet",
    "Indep2DWitness",
    "LevelParity",
    "MaxIndep1D",
    "MaxIndepEstimate",
    "MaxSymbolBlock",
    "NoWitness",
    "NotHereditary",
    "NotUnexpandable",
    "PreconditionViolated",
    "Report",
    "ShiftLabError",
    "ShiftSpec1D",
    "ShiftSpec2D",
    "SinkDecomposition",
    "SinkLiftSet",
    "SurfaceEntropy",
    "TailBound",
    "TreeDensity",
    "TreeEntropy",
    "TreeGeometry",
    "TreeShiftSpec",
    "UpperDensity2D",
    "VertexSet",
    "WordAutomaton",
    "binary_entropy",
    "bip_search",
    "block_counts",
    "blocks_1d",
    "blocks_2d",
    "count_blocks_1d",
    "count_blocks_2d",
    "count_patterns",
    "count_shattered",
    "count_symbol",
    "distinct_restrictions",
    "emit_report",
    "entering_counts",
    "entropy_chain",
    "entropy_est_1d",
    "entropy_est_2d",
    "entropy_tail_bound",
    "expanding_number",
    "extract_shattered",
    "fr_estimate",
    "hereditary_closure",
    "indep_witness_2d",
    "is_hereditary_upto",
    "is_indep_1d",
    "is_indep_2d",
    "is_indep_tree",
    "is_shattered",
    "level_sizes",
    "make_tree_shift",
    "max_indep_J",
    "max_indep_est",
    "max_symbol_block",
    "pattern_from_rows",
    "prefix_regular_block",
    "ray_vertices",
    "reproduce",
    "run_config",
    "sink_decomposition",
    "sink_level_counts",
    "sink_lift",
    "spectral_radius",
    "surface_entropy_est",
    "tree_density",
    "tree_entropy_est",
    "upper_density_grid",
    "word_from_str",
    "word_to_str",
]
