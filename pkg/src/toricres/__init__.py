"""Crepant resolutions, Kähler classes and Reeb vectors of toric Gorenstein cones."""

from . import exactlin
from .errors import *  # noqa: F401,F403
from .fan import (
    Cone,
    Fan,
    GorensteinData,
    SlicePolytope,
    delzant_matrices,
    gorenstein_vector,
    is_nonsingular,
    moment_cone,
    slice_polytope,
    validate_fan,
)
from .kclass import (
    KahlerClass,
    SupportFunction,
    find_compact_support,
    is_compact,
    is_convex,
    is_strictly_convex,
    kahler_class,
    support_from_heights,
)
from .reeb import ReebProblem, ReebSolution, minimize_volume, volume, volume_gradient
from .resolve import (
    RefinedFan,
    Triangulation,
    canonical_bundle_fan,
    flop,
    refine_fan,
    triangulate_basic,
    ypq_fan,
    ypq_is_quasiregular,
)

__version__ = "0.1.0"
