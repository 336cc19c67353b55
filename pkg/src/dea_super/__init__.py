"""Directional super-efficiency scores for data envelopment analysis."""

from .catalog import REGISTRY, ModelPreset, PresetError, get_preset, run_preset
from .dataset import (Dataset, DatasetError, DmuRecord, EvaluationContext, RtsSpec, from_arrays,
                      make_context, validate_dataset)
from .directions import (DirectionError, DirectionReport, DirectionVector,
                         apply_preference_weights, build_direction, slack_index_sets,
                         validate_direction)
from .evaluation import RunConfig, RunReport, parse_config, rank_dmus, run_evaluation
from .ingest import ConfigError, load_config, load_dataset
from .lp import (ConditioningError, DenominatorDegeneracyError, LinearProgram, SolverError,
                 charnes_cooper_linearize, solve_lp)
from .models import (HybridPartition, ScoreResult, SolutionBundle, decompose, solve,
                     solve_fractional_gdse, solve_hdse, solve_input_nonradial, solve_input_radial,
                     solve_linear_gdse, solve_rdse)
from .report import emit_report

__version__ = "0.1.0"
