# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Constants and default configuration values for sausagelab."""

# Analytic oracles
DEFAULT_BOUND_CONSTANT = 1.0
QUAD_ABS_TOLERANCE = 1e-10
QUAD_BASE_LIMIT = 200

# Retry configuration (quadrature subdivision escalation)
MAX_RETRY_ATTEMPTS = 3

# Sausage geometry
MERGE_TOLERANCE = 1e-12
DEFAULT_DT_MIN = 1e-8
DEFAULT_MAX_SEGMENTS = 1_000_000

# Walk on spheres
DEFAULT_X_CUTOFF = 12.0
MIN_X_CUTOFF = 5.0
STOP_SHELL_FRACTION = 0.01
DEFAULT_MAX_STEPS = 10_000
MIN_MAX_STEPS = 1_000

# Finite-difference oracle
FD_TOLERANCE = 1e-8
FD_MAX_SWEEPS = 200_000
FD_CHECK_EVERY = 50

# Estimators
CORRIDOR_MIN_ACCEPTANCE = 1e-6
CORRIDOR_BATCH = 64
TAIL_MIN_EXCEEDANCES = 20
TAIL_MIN_BEYOND_MEDIAN = 50
STRIP_MIN_CONDITIONED = 1_000
INCONCLUSIVE_RELATIVE_ERROR = 0.25
XI_HISTOGRAM_BINS = 20
CHUNK_SIZE = 256

# Stream tags: first component of every StreamKey index
STREAM_NAIVE = 1
STREAM_CORRIDOR = 2
STREAM_WOS = 3
STREAM_LOCAL_TIME = 4
STREAM_BRIDGE = 5
STREAM_STRIP = 6
STREAM_MARTINGALE = 7
STREAM_SRW = 8
STREAM_TOY = 9
STREAM_REFINE = 10

# CLI
WORKERS_ENV_VAR = "SAUSAGELAB_WORKERS"
LOGS_DIR = "logs"
ERROR_LOG_FILE = "task-errors.log"
ROWS_FILE = "rows.csv"
SUMMARY_FILE = "summary.json"
MANIFEST_FILE = "manifest.json"
REPORT_FILE = "report.csv"
REPORT_LONG_FILE = "report_long.csv"
FIT_FILE = "fit.json"
FLOAT_FORMAT = ".17g"

# Exit codes
EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_INCONCLUSIVE = 4
