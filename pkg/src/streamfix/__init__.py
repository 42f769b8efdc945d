"""Reasoning over stream logic programs: windowed temporal formulas, rule
semantics with three flavors of answer streams, fixed-point construction, and
level mappings that expose how a model justifies itself."""

__version__ = "0.1.0"

from .answer import (
    DEFAULT_ENUMERATION_BOUND,
    MAX_UNIVERSE_CELLS,
    MODES,
    Universe,
    boxplus_translate,
    default_universe,
    enumerate_answer_streams,
    is_fixed_interval_answer_stream,
    is_phi_answer_stream,
    is_t_answer_stream,
    is_t_model,
    marker_stream,
    ordinary_answer_sets,
    reduct,
    validate_heads,
)
from .entailment import (
    DEFAULT_COMPLETION_BOUND,
    Context,
    entails,
    entails3,
    entails_fixed,
)
from .formulas import (
    And,
    At,
    Atom,
    Box,
    Classification,
    Diamond,
    Formula,
    Implies,
    INF,
    Neg,
    Or,
    Program,
    Rule,
    TOP,
    Top,
    Window,
    at_targets,
    atoms,
    check_t_consistent,
    classify,
    conjoin,
    format_formula,
    format_program,
    format_rule,
    head_atoms,
    is_ordinary,
    walk,
)
from .levelmap import (
    LevelMappingReport,
    Partitioning,
    detect_circular,
    extract_level_mapping,
    verify_level_mapping,
)
from .operators import (
    FixpointTrace,
    model_op,
    partial_model,
    phi,
    phi_dagger,
    tp,
    tp_rules,
    translate,
)
from .parsing import ParseError, parse_formula, parse_program, parse_rule
from .serialize import (
    format_stream_text,
    interval_to_pair,
    parse_stream_text,
    stream_from_entries,
    stream_to_entries,
)
from .streams import (
    EMPTY_INTERVAL,
    EMPTY_STREAM,
    BoundExceeded,
    Interval,
    Stream,
    ThreeValuedStream,
    enumerate_substreams,
    precision_leq,
    window_interval,
)
