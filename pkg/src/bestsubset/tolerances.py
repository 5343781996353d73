"""Numerical thresholds used across the package.

These are deliberate design constants, not tuning knobs. They are shared
between the determinant-ratio path and the least-squares baseline so that
both sides agree on which inputs count as degenerate.
"""

# A column is degenerate when its standard deviation does not exceed this
# fraction of its largest absolute deviation from the mean.
EPS_VAR = 1e-12

# Gaussian elimination pivot threshold. A pivot below this magnitude marks
# the subset as numerically collinear. Shared by every method so they all
# skip the same subsets.
EPS_PIV = 1e-10

# Tolerance for internal consistency checks, e.g. a squared uncorrelation
# coefficient may undershoot 0 by at most this much before we treat it as
# a genuine numerical failure rather than benign rounding.
EPS_NUM = 1e-9

# Two subset scores within this absolute distance are treated as tied; the
# lexicographically smallest index tuple wins.
TIE_EPS = 1e-12

# Default cap on the number of scored (subset, responder) pairs per run.
DEFAULT_PAIR_LIMIT = 10_000_000
