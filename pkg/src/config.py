"""
Optimistic Limit Configuration
------------------------------
This module contains configuration constants for the optimistic limit toolkit.
"""
import os

# Get the directory where the script is located
SCRIPT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Bundled PD codes and potentials
FIXTURES_DIR = os.environ.get("OPTLIM_FIXTURES_DIR", os.path.join(SCRIPT_DIR, "fixtures"))

# Logging
LOG_FILE = os.environ.get("OPTLIM_LOG_FILE", "optlim.log")
LOG_LEVEL = os.environ.get("OPTLIM_LOG_LEVEL", "INFO")

# Tolerances
EPS_FN = 1e-12  # identity residuals
EPS_SOLVE = float(os.environ.get("OPTLIM_EPS_SOLVE", "1e-10"))  # solver residuals
ESSENTIAL_TOL = 1e-8  # distance of a shape from {0, 1, inf}
DEDUP_TOL = 1e-6  # max-norm distance between distinct solutions

# Solver
DEFAULT_SEEDS = int(os.environ.get("OPTLIM_SEEDS", "200"))
DEFAULT_RNG_SEED = int(os.environ.get("OPTLIM_RNG_SEED", "0"))
SEED_RADIUS_MIN = 0.1
SEED_RADIUS_MAX = 10.0
NEWTON_MAX_ITER = 100
NEWTON_MAX_BACKTRACK = 20
REGION_SEEDS = 10  # random region-structured seeds on top of the fixed ones
SEED_ESCALATIONS = 2  # seed doublings while the top volume is tied
VOLUME_TIE_TOL = 1e-8
DEFAULT_THREADS = int(os.environ.get("OPTLIM_THREADS", "1"))

# Random octahedron sampling for the identity suites
SAMPLE_MARGIN = 0.05
SAMPLE_RADIUS = 3.0

# Output
SCHEMA_VERSION = 1

# Largest |V0 - W0| (mod 4*pi^2) accepted at a paired solution
CONSISTENCY_TOL = float(os.environ.get("OPTLIM_CONSISTENCY_TOL", "1e-8"))
