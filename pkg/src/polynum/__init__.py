"""Exact polytope numbers, pointed triangulations and decomposition forms."""

from .config import BudgetExceeded
from .decomposition import (
    DecompositionForm,
    FacePoset,
    PolytopalComplex,
    convert_to_T1,
    decompose,
    decompose_T1_shelling,
    decompose_T1_solve,
    decompose_T2,
    decompose_T2_solve,
    decompose_T31,
    decompose_T31_solve,
    decompose_T32,
    decompose_T4,
    moebius_check,
)
from .expr import PolytopeExpr, build, parse
from .face_lattice import (
    Face,
    FaceLattice,
    Polytope,
    bipyramid,
    brute_force_faces,
    f_vector,
    make_cross,
    make_cube,
    make_hypersimplex,
    make_simplex,
    product,
    pyramid,
)
from .numbers import (
    NumberEngine,
    PolynomialForm,
    geometric_count,
    interior_number,
    interpolate_polynomial,
    poly_number,
    product_formula_check,
    vertex_description_count,
)
from .triangulation import (
    ApexAssignment,
    GenericFunctional,
    PointedTriangulation,
    ShellingOrder,
    assign_apexes,
    build_triangulation,
    sub_triangulation,
    triangulation_shelling,
    validate_pointed,
)

__version__ = "0.1.0"
