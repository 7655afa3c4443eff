"""Numerical toolkit for the class U(lambda) of normalized analytic functions
with ``|f'(z)(z/f(z))^2 - 1| < lambda`` and its meromorphic companion class."""
from .errors import UnivalentError
from .families import (
    DiscreteCircleMeasure,
    FunctionSpec,
    HullMeasure,
    JAlpha,
    KLambda,
    Koebe,
    RationalMember,
    Rotation,
    SchwarzMember,
    SeriesSpec,
    TestG,
    eval_spec,
    generate_members,
    hull_from_measure,
    member_from_schwarz,
    rotate,
    series_of,
    spec_from_dict,
    spec_to_dict,
)
from .meromorphic import MeromorphicSeries
from .series import PowerSeries

__version__ = "0.1.0"

__all__ = [
    "DiscreteCircleMeasure", "FunctionSpec", "HullMeasure", "JAlpha", "KLambda", "Koebe", "MeromorphicSeries",
    "PowerSeries", "RationalMember", "Rotation", "SchwarzMember", "SeriesSpec", "TestG", "UnivalentError",
    "eval_spec", "generate_members", "hull_from_measure", "member_from_schwarz", "rotate", "series_of",
    "spec_from_dict", "spec_to_dict",
]
