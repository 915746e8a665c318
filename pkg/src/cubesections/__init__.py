"""Expected face numbers of random central sections of the cube ``[-1, 1]^n``."""

from .analysis import (
    ExtremeValueConstants,
    IntegralValue,
    cube_gauss_integral,
    extreme_value_constants,
    gaussian_cube_measure,
    gumbel_limit_check,
    integral_asymptotic,
    std_normal_cdf_sym,
)
from .errors import (
    CubeSectionsError,
    DataQualityError,
    DegenerateInputError,
    DomainError,
    IntegrationError,
    LPSolverError,
    RangeError,
)
from .formulas import (
    BoundPair,
    FaceQuery,
    f0_asymptotic,
    f0_codim1_closed_form,
    f0_codim_lower_bound,
    f0_exact,
    f_bounds,
    f_codim_asymptotic,
    f_lower_bound,
    f_upper_bound,
    t_bound,
)
from .geometry import (
    CubeFace,
    Polygon2D,
    canonical_face,
    face_hit,
    gaussian_hull_vertex_count,
    section_measure_check,
    sample_subspace,
    section_polygon,
)
from .montecarlo import (
    Estimate,
    RunConfig,
    estimate,
    estimate_face_count,
    estimate_hull_fvector,
    estimate_polygon_fvector,
)

__version__ = "0.1.0"
