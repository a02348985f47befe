import os
import json
import numpy as np

# Constants

# Config Variables
# Loads config (optional)
CONFIG = {}
CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), '../config.json')
if os.path.exists(CONFIG_FILE):
    with open(CONFIG_FILE) as f:
        CONFIG = json.load(f)

# Global constants from config
RESULTS_FOLDER = CONFIG.get("results_folder", "results")
ERRORS_FOLDER = CONFIG.get("errors_folder", "errors")
ERRORS_FILE = "error_log.csv"
VERBOSE = CONFIG.get("verbose", True)

# Printing
TAB = "  "

# Machine precision
EPS = np.finfo(float).eps

# Offset used to read delayed arguments from inside an interval
NUDGE = 8 * EPS

# Delayed arguments within SWITCH_TOL max(1, |a|) above a read the history
SWITCH_TOL = 1e-7

# Residual Subsampling defaults
LAMBDA = 10
MU_NUMERATOR = 40 # mu = sqrt(MU_NUMERATOR / n0)
GAMMA = 0.1
ETA = 10
THETA_MAX = 1e-13
THETA_MIN = 1e-14
N0 = 6
ITMAX = 20
N_EV = 103

# Every shape is SHAPE_FACTOR times the lam / mu / gamma distribution
SHAPE_FACTOR = 10.0

# RSA budgets (a run stops with BUDGET_REACHED past either)
MAX_DOF = 800
MAX_SECONDS = 600.0
# Nonlinear cases refit every node with finite difference Jacobians
NONLINEAR_MAX_DOF = 200

# Duplicate nodes tolerance (relative to b - a)
NODE_TOLERANCE = 1e-12

# Nonlinear solver
NL_MAX_ITERS = 30
NL_F_TOL = 1e-12
NL_STEP_TOL = 1e-14
NL_INITIAL_RADIUS = 1.0
FD_STEP = np.sqrt(EPS)

# Trust region
TR_LOW_RATIO = 0.25
TR_HIGH_RATIO = 0.75
TR_SHRINK = 0.25
TR_EXPAND = 2.0

# Condition cap for nonlinear collocation
COND_CAP = 1e14
COND_SHRINK = 0.8
MIN_SHAPE_SCALE = 1e-3

# Oracle
ORACLE_STEP = 1e-3
ORACLE_SWEEPS = 25
ORACLE_SWEEP_TOL = 1e-14

# Registration oracle
REGISTRATION_TOL = 1e-8
REGISTRATION_SAMPLES = 50

# Status
CONVERGED = "converged"
MAX_ITERS = "max-iters"
STALLED = "stalled"
RESIDUAL_CONVERGED = "residual-converged"
ITMAX_REACHED = "itmax-reached"
BUDGET_REACHED = "budget-reached"
ABORTED = "aborted"
NL_FAILED = "f"

# Column Names
ITER = "iter"
DOF = "dof"
MAX_RESIDUAL = "max_residual"
COND = "cond"
RMS = "rms"
NL_ITERS = "nl_iters"
X = "x"
Y_APPROX = "y_approx"
Y_EXACT = "y_exact"
ABS_ERR = "abs_err"
PIECE = "piece"
PIECE_A = "a"
PIECE_B = "b"
STATUS = "status"
JUNCTION_GAP = "junction_gap"
MQCM = "y_mqcm"
ORACLE = "y_oracle"
DIFFERENCE = "difference"

ITERATION_COLS = [ITER, DOF, MAX_RESIDUAL, COND, RMS, NL_ITERS]
SOLUTION_COLS = [X, Y_APPROX, Y_EXACT, ABS_ERR]
POINT_ERROR_COLS = [X, ABS_ERR]
PIECE_COLS = [PIECE, PIECE_A, PIECE_B, DOF, STATUS, JUNCTION_GAP]
CROSS_CHECK_COLS = [X, MQCM, ORACLE, DIFFERENCE]

# Output files
ITERATIONS_FILE = "iterations.csv"
POINT_ERRORS_FILE = "errors.csv"
SOLUTION_FILE = "solution.csv"
PIECES_FILE = "pieces.csv"
CROSS_CHECK_FILE = "cross_check.csv"

# 17 significant digits
FLOAT_FORMAT = "%.16e"

# Exit codes
EXIT_CONVERGED = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2
EXIT_USAGE = 64
