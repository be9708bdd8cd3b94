"""Numeric policy shared across modules.

Exact rational arithmetic is used wherever an identity is claimed; the
constants here govern the floating-point side (root finding, winding numbers,
certified grid bounds).
"""

from fractions import Fraction

# Roots closer than this to |z| = 1 make float classification unreliable;
# inside this band the certifiers answer Indeterminate instead of guessing.
NEAR_CIRCLE_TOL = 1e-9

# eval() raises EvalNearPole below this denominator magnitude.
EVAL_DEN_FLOOR = 1e-300

# Boundary sampling for sup-norm and min-modulus bounds.
DEFAULT_BOUNDARY_GRID = 4096

# Polar grid used to estimate a corona lower bound over the closed disc.
DELTA_GRID_RADII = 128
DELTA_GRID_ANGLES = 512

# Residual tolerance for the simultaneous root iteration.
ROOT_RESIDUAL_TOL = 1e-10

# The root finder refuses degrees above this.
DEGREE_CAP = 64

# Isolating intervals for real roots are refined below this width.
ISOLATION_WIDTH = Fraction(1, 10**12)

# Hard cap on sign-refinement bisections before giving up.
BISECTION_CAP = 200
