"""Resonant-beam SWIPT link simulator: cavity ray optics, semiconductor
gain power model, PV/APD receiver, and parameter-sweep design search."""

from .config import ConfigError, get_preset, parse_config, serialize_config
from .gain_power import (
    GainModel,
    LossModel,
    PowerResult,
    PumpModel,
    evaluate_link,
)
from .model import OperatingPoint, evaluate_operating_point
from .ray_optics import (
    DegenerateCavityError,
    RayTransferMatrix,
    RayVector,
    ResonatorGeometry,
    UnstableResonatorError,
    diffraction_survival,
    free_space,
    one_trip_matrix,
    reflector_matrix,
    spot_radius_on_gain,
    thin_lens,
    tim_matrix,
)
from .receiver import ReceiverModel, SwiptResult, evaluate_receiver
from .sweep import (
    Axis,
    OptimizationError,
    SweepSpec,
    find_optimum,
    reduce_max,
    run_sweep,
)

__version__ = "0.1.0"
