"""Evolving fuzzy rule-based forecasting.

Rules are created, updated and pruned online via participatory learning;
the compatibility between an input window and a rule center is measured by
comparing fuzzy sets built from the windows; each rule's consequent is a
kernel recursive least squares expansion over a sparsified dictionary.
"""

from ._backend import available_backends, backend_name, set_backend
from .builders import GenerationMethod, build_type2, split_window
from .datasets import (
    EmbeddedDataset,
    SeriesSpec,
    embed_mackey_glass,
    embed_stock,
    generate_mackey_glass,
    load_close_series,
    min_max_normalize,
)
from .errors import (
    DegenerateSetError,
    DomainError,
    GridMismatchError,
    IngestionError,
    SingularUpdateError,
)
from .fuzzysets import (
    DEFAULT_GRID,
    AlphaCut,
    DiscretizedFuzzySet,
    Type2FuzzySet,
    UniverseGrid,
    ZSlice,
)
from .measures import compatibility, measure_names, register_measure
from .metrics import MetricReport, evaluate
from .model import EvolvingModel, ModelConfig, TrainingReport

__version__ = "0.1.0"

__all__ = [
    "AlphaCut",
    "DEFAULT_GRID",
    "DegenerateSetError",
    "DiscretizedFuzzySet",
    "DomainError",
    "EmbeddedDataset",
    "EvolvingModel",
    "GenerationMethod",
    "GridMismatchError",
    "IngestionError",
    "MetricReport",
    "ModelConfig",
    "SeriesSpec",
    "SingularUpdateError",
    "TrainingReport",
    "Type2FuzzySet",
    "UniverseGrid",
    "ZSlice",
    "available_backends",
    "backend_name",
    "build_type2",
    "compatibility",
    "embed_mackey_glass",
    "embed_stock",
    "evaluate",
    "generate_mackey_glass",
    "load_close_series",
    "measure_names",
    "min_max_normalize",
    "register_measure",
    "set_backend",
    "split_window",
]
