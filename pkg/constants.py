DEFAULT_TOL = 1e-8

# ml-core
MAX_SERIES_TERMS = 10000
MAX_ASYMPTOTIC_TERMS = 400
SERIES_MAX_X = 1.0
# double-precision unit roundoff used for series rounding estimates
MACHINE_EPS = 2.220446049250313e-16
# orders below this are treated as the alpha -> 0 limit of the closed form
ZERO_ORDER_LIMIT = 1e-10
INTEGRAL_REL_TOL = 1e-12

# quadrature engine
QUAD_LIMIT = 200

# fracops
# one-sided endpoint slope step, relative to t
SLOPE_STEP = 1e-3
LAPLACE_MAX_DOUBLINGS = 60
DIFF_STEP = 1e-5

# dielectrics
MIN_GRID_STEPS = 2

# cli / tables
CSV_SIG_DIGITS = 9
TABLE1_ABSCISSAE = [0.0, 0.2, 0.4, 0.6, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0]
TABLE1_SMALL_ORDER = 0.1
TABLE1_HALF_ORDER = 0.5

FIGURE_IDS = [1, 2, 3, 4, 5, 6, 7, 9]
FIG1_ORDERS = [0.25, 0.5, 0.75, 0.9]
FIG1_R_MIN = 1e-6
FIG1_R_MAX = 2.0
FIG1_POINTS = 401
FIG2_ORDERS = [0.25, 0.5, 0.75, 0.9, 1.0]
FIG2_T_MAX = 15.0
FIG2_POINTS = 301
ASYMPTOTIC_FIGURE_ORDERS = {3: 0.25, 4: 0.5, 5: 0.75, 6: 0.9, 7: 0.99}
ASYMPTOTIC_T_MIN_EXP = -5
ASYMPTOTIC_T_MAX_EXP = 5
ASYMPTOTIC_POINTS = 201
FIG9_ORDERS = [0.25, 0.5, 0.75, 1.0]
FIG9_T_MAX = 10.0
FIG9_POINTS = 201

