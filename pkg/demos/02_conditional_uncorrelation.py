"""
Conditional uncorrelation: scoring a subset without fitting it
==============================================================

The determinant of a correlation matrix measures how far a set of
variables is from mutual linear dependence. Ratioing two such
determinants scores a regression subset directly: no normal equations,
no residual pass over the data. This script traces that identity.
"""

import numpy as np

from bestsubset import (
    DesignMatrix,
    build_correlation_model,
    conditional_uuc,
    fit_single,
    mse_from_uuc,
    r_squared_from_uuc,
    synthetic_observations,
    triangulate,
    uuc_squared,
)
from bestsubset.stats import column_stats

rng = np.random.default_rng(7)
data = synthetic_observations(d=120, p=6, seed=7)
model = build_correlation_model(data, predictors=[0, 1, 2, 3, 4], responders=[5])

# ---------------------------------------------------------------------
# 1. The unsigned uncorrelation coefficient of a predictor set is the
#    determinant of its correlation matrix: 1 when orthogonal, 0 when
#    linearly dependent.
# ---------------------------------------------------------------------
subset = (0, 2, 3)
rx = [[float(model.rx[i, j]) for j in subset] for i in subset]
print(f"uuc^2 of predictors {subset}: {uuc_squared([row[:] for row in rx]):.6f}")

# ---------------------------------------------------------------------
# 2. Triangulating the predictor block once yields a cache (the scaled
#    rows and pivot reciprocals); each responder then costs only a
#    short back-substitution against its correlation vector.
# ---------------------------------------------------------------------
cache = triangulate([row[:] for row in rx])
rho = [float(model.ry[0, j]) for j in subset]
cond = conditional_uuc(cache, rho)
print(f"conditional omega^2(y | {subset}) = {cond.omega_sq:.6f}")

# ---------------------------------------------------------------------
# 3. The payoff: sigma_y^2 * omega^2 IS the least-squares MSE of that
#    subset, and 1 - omega^2 is its R^2. Verify against an explicit fit.
# ---------------------------------------------------------------------
sigma_y = column_stats(data.column(5)).sigma
mse = mse_from_uuc(sigma_y ** 2, cond.omega_sq)
r2 = r_squared_from_uuc(cond.omega_sq)

design = DesignMatrix([data.column_list(j) for j in subset])
fit = fit_single(design, data.column_list(5))
print(f"mse via determinant ratio: {mse:.8f}")
print(f"mse via explicit residual: {fit.mse:.8f}")
print(f"agreement: {abs(mse - fit.mse) / fit.mse:.2e} relative")
print(f"r^2 = {r2:.6f}")

# ---------------------------------------------------------------------
# 4. Growing the subset can only shrink omega^2 (adding a predictor
#    never hurts the best linear fit).
# ---------------------------------------------------------------------
for size in range(1, 6):
    chain = tuple(range(size))
    rx_c = [[float(model.rx[i, j]) for j in chain] for i in chain]
    rho_c = [float(model.ry[0, j]) for j in chain]
    omega = conditional_uuc(triangulate(rx_c), rho_c).omega_sq
    print(f"  omega^2 with first {size} predictors: {omega:.6f}")
