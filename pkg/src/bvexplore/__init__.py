"""Search integer-input functions for input pairs that sit on behaviour boundaries.

Typical use::

    import random
    from bvexplore import Archive, Budget, get_sut, run_sampler, SamplerKind

    sut = get_sut("circle")
    archive = Archive(sut)
    run_sampler(archive, sut, SamplerKind.CTS_BITUNIFORM, Budget(evaluations=2000), random.Random(1))
"""
from .archive import AddOutcome, Archive, ArchiveEntry, Phase, Selection
from .budget import Budget
from .derivative import (BoundaryCandidate, OutputDistance, evaluate_pair, input_distance,
                         jaccard_2gram_distance, output_distance, program_derivative)
from .descriptors import CellCoord, ValidityGroup, cell_coord
from .errors import (ArityMismatch, ArityUnsupported, BoundaryError, ConfigError, DegenerateParent,
                     EmptyArchive, EmptyInput, EmptyUniverse, EvaluationMismatch,
                     InsufficientCandidates, SchemaError, UnknownCell, UnknownClass,
                     ZeroInputDistance)
from .explorer import ExplorerConfig, mutate, run_explorer
from .metrics import (CandidateUniverse, boundariness_filter, build_universe, import_external,
                      pairwise_unique, rac, rpd)
from .runner import RunRecord, StrategyConfig, load_record, run
from .sampler import SamplerKind, run_sampler
from .suts import ExecutionOutcome, SutError, SutSpec, get_sut, make_sut, sut_names
from .tracer import TracerConfig, prioritize, run_tracer, search_bounds, trace, weight_w

__version__ = "0.1.0"

__all__ = [
    "AddOutcome", "Archive", "ArchiveEntry", "Phase", "Selection", "Budget",
    "BoundaryCandidate", "OutputDistance", "evaluate_pair", "input_distance",
    "jaccard_2gram_distance", "output_distance", "program_derivative",
    "CellCoord", "ValidityGroup", "cell_coord",
    "ArityMismatch", "ArityUnsupported", "BoundaryError", "ConfigError", "DegenerateParent",
    "EmptyArchive", "EmptyInput", "EmptyUniverse", "EvaluationMismatch",
    "InsufficientCandidates", "SchemaError", "UnknownCell", "UnknownClass", "ZeroInputDistance",
    "ExplorerConfig", "mutate", "run_explorer",
    "CandidateUniverse", "boundariness_filter", "build_universe", "import_external",
    "pairwise_unique", "rac", "rpd",
    "RunRecord", "StrategyConfig", "load_record", "run",
    "SamplerKind", "run_sampler",
    "ExecutionOutcome", "SutError", "SutSpec", "get_sut", "make_sut", "sut_names",
    "TracerConfig", "prioritize", "run_tracer", "search_bounds", "trace", "weight_w",
]
