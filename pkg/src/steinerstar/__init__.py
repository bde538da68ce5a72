"""Steiner stars, minimum stars, maximum matchings, and star Steiner ratio
bounds for finite point sets in R^d, plus seeded searches for extremal
configurations."""

from .analytic import (
    BoundPair,
    BoundsTable,
    UniformConstant,
    WallisPartial,
    adaptive_simpson,
    bounds_table,
    circle_sum_max,
    circle_sum_quadratic_upper,
    conjectured_plane_ratio,
    ratio_envelope,
    ratio_upper_bound,
    sphere_mean_distance,
    sphere_mean_distance_quadrature,
    sphere_sum_bounds,
    wallis_envelopes,
    wallis_partial,
    wallis_tail_sum,
)
from .exceptions import (
    CenterCoincidesWithPointError,
    ConjectureCounterexampleWarning,
    DimensionMismatchError,
    MatchingTooLargeError,
    NotConvergedError,
    OddCardinalityError,
    QuadratureError,
    SteinerStarError,
)
from .geometry import (
    WeberFrame,
    check_point,
    check_points,
    diameter,
    distance,
    load_points_csv,
    pairwise_distance_sum,
    project_to_unit_sphere,
    save_points_csv,
    to_weber_frame,
)
from .matching import MatchingResult, max_matching, star_matching_ratio
from .search import SearchResult, SearchSpec, maximize, uniform_circle, uniform_sphere
from .stars import (
    RatioReport,
    StarSummary,
    averaged_bound,
    min_star,
    nearest_point_bound,
    projection_chords,
    ratio_report,
    star_length,
    star_lengths,
)
from .weber import WeberResult, optimality_residual, steiner_star_length, weiszfeld

__version__ = "0.1.0"


def __getattr__(name):
    # WeberCenter pulls in scikit-learn; import lazily to keep CLI startup light
    if name == "WeberCenter":
        from .estimator import WeberCenter

        return WeberCenter
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
