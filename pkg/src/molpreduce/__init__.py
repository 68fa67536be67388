"""Reduce multi-objective linear programs to vector linear programs with as
many objectives as the rank of the objective matrix."""

from .benson import solve_benson
from .errors import (
    ConeNotPointed,
    ConeNotSolid,
    DimensionCap,
    DimensionMismatch,
    EmptyObjectives,
    FactorizationMismatch,
    MolpReduceError,
    NotAnMolp,
    NotPointed,
    ParseError,
    TooLarge,
    UnboundedFeasibleSet,
    ZeroMatrix,
)
from .linalg import Factorization, Rational, RationalMatrix, rank, rank_factorize, trivial_factorize
from .lp import LinearProgram, LPResult, lp_solve
from .nonessential import (
    ConicCertificate,
    NonessentialReport,
    essential_rows_via_hrep,
    is_conic_combination,
    nonessential_system,
    verify_nonessential,
)
from .polyhedra import HPolyhedron, PolyhedralCone, VPolyhedron, cone_from_matrix, natural_cone
from .problems import SolveResult, VectorProblem, parse_problem, serialize_problem, validate
from .reduction import (
    Reduction,
    generalized_reduce,
    interpretation_problem,
    lift_minimal_points,
    reduce_molp,
    reduce_vlp,
)
from .solver import (
    DominanceQuery,
    is_generalized_minimal,
    is_minimal,
    oracle_efficient_set,
    solve_enum,
)

__version__ = "0.1.0"
