"""Scenario tolerances and fixed experiment parameters, in one place.

Every number a canned scenario or the acceptance suite checks against is
named here so the pass/fail thresholds are auditable and versioned with
the code.  Modules keep their own algorithmic defaults (fit windows,
refinement schedules); this file pins the *experiment* parameters.
"""
from .criteria import DEFAULT_FIT_RANGE

# --- uniform-energy -----------------------------------------------------
UNIFORM_ENERGY_VALUE = 1.5          # closed form for unit mass on [0, 1]
UNIFORM_ENERGY_TOL = 1e-3           # per-engine absolute tolerance
UNIFORM_ENGINE_AGREE_TOL = 2e-3     # cross-engine agreement

# --- counterexample-L1 ---------------------------------------------------
COUNTEREXAMPLE_BLOCKS = 50          # truncation depth of the staircase
COUNTEREXAMPLE_TERM_TOL = 1e-12     # each diagonal term equals 1 within this
COUNTEREXAMPLE_MASS_TOL = 1e-12     # L1 norm equals 1 - 2**-50 within this
COUNTEREXAMPLE_REPORT_TERMS = 20    # rows shown in the emitted table

# --- llogl-threshold -----------------------------------------------------
LLOGL_FINITE_GAMMA = 0.4            # below the 1/2 threshold: finite
LLOGL_DIVERGENT_GAMMA = 0.6         # above the 1/2 threshold: +inf

# --- cantor-standard -----------------------------------------------------
CANTOR_FIT_WINDOW = DEFAULT_FIT_RANGE   # dyadic octaves 2^-4 .. 2^-16
CANTOR_ALPHA_RANGE = (0.61, 0.65)       # contains ln2/ln3 = 0.6309...

# --- cantor-smallest / dimension-table ----------------------------------
DIMENSION_KS = (3.0, 4.0, 9.0)      # equal-ratio families for the slope table
DIMENSION_FIT_LEVELS = (4, 16)      # levels used for the box-count fit
DIMENSION_SLOPE_TOL = 1e-6          # |slope - ln2/lnK| bound (exact covers)
DIM0_DEPTH = 40                     # construction depth for the thin family
DIM0_LEVEL = 36                     # level at which the pointwise ratio ...
DIM0_BOUND = 1e-4                   # ... must have decayed below this
LOG_MODULUS_SAMPLES = 1000          # modulus grid size for the certificate

# --- radial-circle -------------------------------------------------------
RADIAL_NS = (64, 256, 1024)         # circle discretization sizes
RADIAL_SUP_ERR_FACTOR = 2.0         # sup error vs arcsin profile <= 2/n

# --- power-law -----------------------------------------------------------
POWER_ALPHAS = (0.25, 0.5, 1.0)     # exponents that must certify membership

# --- blob-holder ---------------------------------------------------------
BLOB_PARENT_PARAMS = (1.0, 0.5, 1.0)   # (c, alpha, R) of the parent profile
BLOB_N = 1000                       # atoms before mollification
BLOB_J_RANGE = (4, 8)               # blob radii 2^-j for j in this range
BLOB_FIT_WINDOW = (1, 4)            # calibrated fit octaves (see note below)
BLOB_MIN_ALPHA = 0.48               # uniform exponent threshold
BLOB_K_FACTOR = 1.2                 # uniform constant threshold vs parent
# Calibration note: the fit window (1, 4) spans the four octaves coarser
# than every tested mollification radius.  Below its own blob radius each
# mollified measure is intentionally smoother than the parent (that is the
# point of mollification), so uniform tracking of the parent's modulus is
# a claim about the resolved scales; the pre-build calibration run that
# fixed this window is recorded in the repository notes and regression
# tests.

# --- velocity consistency ------------------------------------------------
KE_ANNULUS_REL_TOL = 0.05           # annulus energy vs (1/2pi) ln 10
KE_SLOPE_REL_TOL = 0.10             # ln(1/eps) growth slope vs 1/(2pi)
KE_GRID_DRIFT_TOL = 0.02            # successive grid refinements differ less
