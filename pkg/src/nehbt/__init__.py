"""Second-order coherence of two extended thermal emitters at different temperatures."""

__version__ = "0.1.0"

from .coherence import (
    BinarySystem,
    CoherenceCurve,
    DerivedRatios,
    FarFieldWarning,
    MinimaLadder,
    SourceBody,
    angular_frequency,
    apparent_separation,
    baseline_asy,
    baseline_osc,
    derived_ratios,
    gamma2_binary,
    gamma2_cross_term,
    gamma2_single,
    gamma2_two_sources,
    gamma_infinity,
    gamma_min,
    minima_ladder,
    sample_curve,
)
from .analysis import (
    EstimateResult,
    FeatureSet,
    InfeasibleFeatures,
    NoOscillationSignal,
    PlateauNotReached,
    classify_by_ratios,
    classify_strategy,
    decision_boundaries,
    estimate_parameters,
    extract_features,
    forward_features,
    phase_angle_sweep,
    variation_asy,
    variation_osc,
)
from .catalog import get_entry, load_catalog

__all__ = [name for name in dir() if not name.startswith("_")]
