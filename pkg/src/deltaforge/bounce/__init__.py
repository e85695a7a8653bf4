"""Polygon-collision simulation scope: physics oracle, scene families, datasets."""

from deltaforge.bounce.geometry import DegenerateShape, apothem, regular_polygon
from deltaforge.bounce.scene import (
    AngularMotion,
    BallShape,
    BallSpec,
    GravitySpec,
    PolygonSpec,
    Scene,
    SimConfig,
    TrajectorySample,
    TranslationPath,
)
from deltaforge.bounce.physics import (
    CollisionEvent,
    InfeasibleScene,
    NotUnitNormal,
    SanityReport,
    Simulator,
    TunnelDetected,
    first_impact_time,
    free_flight,
    reflect,
    sanity_check,
    simulate,
    state_at,
    states_at,
)
from deltaforge.bounce.periodic import DegenerateGap, PeriodicSpec, construct_periodic_scene, recurrence_error
from deltaforge.bounce.families import FAMILIES, RetryBudgetExhausted, TIER_NAMES, difficulty_row, sample_scene
from deltaforge.bounce.dataset import DatasetEntry, build_entry, choose_timestamps, emit_split, oracle_solution_source
from deltaforge.bounce.runner import CandidateResult, ExecPolicy, execute_candidate, score_candidate

__all__ = [
    "DegenerateShape",
    "apothem",
    "regular_polygon",
    "AngularMotion",
    "BallShape",
    "BallSpec",
    "GravitySpec",
    "PolygonSpec",
    "Scene",
    "SimConfig",
    "TrajectorySample",
    "TranslationPath",
    "CollisionEvent",
    "InfeasibleScene",
    "NotUnitNormal",
    "SanityReport",
    "Simulator",
    "TunnelDetected",
    "first_impact_time",
    "free_flight",
    "reflect",
    "sanity_check",
    "simulate",
    "state_at",
    "states_at",
    "DegenerateGap",
    "PeriodicSpec",
    "construct_periodic_scene",
    "recurrence_error",
    "FAMILIES",
    "RetryBudgetExhausted",
    "TIER_NAMES",
    "difficulty_row",
    "sample_scene",
    "DatasetEntry",
    "build_entry",
    "choose_timestamps",
    "emit_split",
    "oracle_solution_source",
    "CandidateResult",
    "ExecPolicy",
    "execute_candidate",
    "score_candidate",
]
