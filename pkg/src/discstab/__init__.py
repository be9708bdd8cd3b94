"""Certified computations with rational elements of the real disc algebra.

Elements are reduced quotients of exact rational polynomials with
denominators certified zero-free on the closed unit disc.  On top of that the
package provides corona (invertible pair) certification, exact Bezout
solving, sign-linked analysis on [-1, 1], the gain search making f + h*g a
unit, simultaneous stabilization of two pairs, the totally-reducible
construction, and a bounded-search harness for the three-pair obstruction.
"""

from .bezout import (
    BezoutSolution,
    ComplexPoly,
    ComplexPolyPair,
    apply_matrix,
    recover_gain,
    solve_bezout,
    symmetrize,
    transform_solution,
)
from .cert import (
    CertMethod,
    CoronaCertificate,
    NotInvertible,
    NotUnit,
    UnitCertificate,
    WitnessKind,
    count_zeros_disc,
    has_circle_root,
    is_invertible_pair,
    is_invertible_tuple,
    is_unit,
)
from .counterexample import (
    FalsificationReport,
    FalsifyVerdict,
    TripleInstance,
    falsify,
    interpolation_constraints,
    make_triple,
    obstruction_map,
    verify_candidate,
)
from .element import (
    DiscElement,
    ONE,
    VAR_Z,
    ZERO,
    as_element,
    element,
    format_element,
    sup_norm_boundary,
    sup_norm_exact,
    sup_norm_upper,
)
from .errors import (
    BoundaryZero,
    BudgetExhausted,
    DegeneratePivot,
    DimensionMismatch,
    DiscStabError,
    EvalNearPole,
    IdentityViolated,
    InconsistentSolutions,
    IndeterminateError,
    NoAdmissibleValue,
    NoConvergence,
    NonUnitDenominator,
    NotASolution,
    NotAntisymmetric,
    NotInvertiblePair,
    NotSignLinked,
    ParseError,
    ReducibilityViolated,
    SchemaError,
)
from .parsing import elaborate, parse, parse_element, print_element
from .poly import (
    RealPoly,
    RootInterval,
    count_real_roots,
    gcd_extended,
    poly_gcd,
    real_roots_interval,
    squarefree_decomposition,
)
from .reduce import ReductionWitness, SearchOptions, Strategy, pin_polynomial, reduce_pair
from .roots import min_root_modulus, roots
from .signs import (
    ConstantSignReport,
    PivotSource,
    SignReport,
    SignVerdict,
    SingularPoint,
    constant_sign_on_real_zeros,
    determinant,
    is_sign_linked,
    multiplier_at,
    parity_interlacing,
)
from .stabilize import (
    StabilizationResult,
    TotalReduceResult,
    check_total_reduce_necessary,
    default_avoided_values,
    simultaneous_stabilize,
    stabilize_squares,
    total_reduce,
)

__version__ = "0.1.0"
