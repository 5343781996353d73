"""Column statistics and Pearson correlation layer."""

import numpy as np
import pytest

from bestsubset import (
    ObservationMatrix,
    ZeroVarianceColumn,
    build_correlation_model,
    column_stats,
    correlation_matrix,
    pearson,
    synthetic_observations,
)


def test_column_stats_known_values():
    """mean and 1/d sigma of (1,2,3,4)."""
    s = column_stats([1.0, 2.0, 3.0, 4.0])
    assert s.mean == pytest.approx(2.5)
    assert s.sigma == pytest.approx(np.sqrt(1.25))


def test_column_stats_constant_column_no_error():
    """A constant column reports sigma 0 without raising."""
    s = column_stats([5.0, 5.0, 5.0])
    assert s.mean == 5.0
    assert s.sigma == 0.0
    assert s.degenerate


def test_pearson_hand_value():
    """pearson((1,2,3),(1,2,2)) works out to sqrt(3)/2 by hand."""
    assert pearson([1, 2, 3], [1, 2, 2]) == pytest.approx(np.sqrt(3) / 2, abs=1e-12)


def test_pearson_self_is_one():
    rng = np.random.default_rng(7)
    x = rng.standard_normal(25)
    assert pearson(x, x) == pytest.approx(1.0, abs=1e-14)


def test_pearson_proportional_columns():
    """An exact affine rescale gives correlation 1 (or -1 for negative slope)."""
    rng = np.random.default_rng(11)
    x = rng.standard_normal(40)
    assert pearson(x, 2.0 * x + 3.0) == pytest.approx(1.0, abs=1e-14)
    assert pearson(x, -0.5 * x + 1.0) == pytest.approx(-1.0, abs=1e-14)
    r = correlation_matrix(ObservationMatrix(np.column_stack([x, 2 * x])), [0, 1])
    assert r == pytest.approx(np.ones((2, 2)), abs=1e-14)


def test_pearson_never_leaves_unit_interval():
    rng = np.random.default_rng(13)
    for _ in range(50):
        x = rng.standard_normal(10)
        assert -1.0 <= pearson(x, 3.0 * x + rng.standard_normal(10) * 1e-9) <= 1.0


def test_pearson_zero_variance_raises():
    with pytest.raises(ZeroVarianceColumn):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_pearson_matches_sample_normalisation_oracle():
    """1/d vs 1/(d-1) cancels: np.corrcoef agrees to 1e-12."""
    rng = np.random.default_rng(17)
    for _ in range(20):
        x = rng.standard_normal(30)
        y = rng.standard_normal(30)
        assert pearson(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-12)


def test_scale_shift_invariance():
    """Pearson is invariant to positive affine maps of either argument."""
    rng = np.random.default_rng(19)
    x = rng.standard_normal(50)
    y = rng.standard_normal(50)
    base = pearson(x, y)
    for _ in range(10):
        a, b = float(rng.uniform(0.1, 10)), float(rng.uniform(-5, 5))
        assert pearson(a * x + b, y) == pytest.approx(base, abs=1e-12)


def test_correlation_matrix_shape_and_symmetry():
    data = synthetic_observations(40, 5, seed=23)
    r = correlation_matrix(data, range(5))
    assert r.shape == (5, 5)
    assert np.array_equal(r, r.T)
    assert np.all(np.diag(r) == 1.0)


def test_correlation_matrix_submatrix_bit_identical():
    """Slicing the full matrix equals recomputing on the subset, bit for bit."""
    data = synthetic_observations(60, 7, seed=29)
    full = correlation_matrix(data, range(7))
    sub = [1, 3, 4, 6]
    small = correlation_matrix(data, sub)
    assert np.array_equal(small, full[np.ix_(sub, sub)])


def test_large_sample_off_diagonals_small():
    """Independent columns at d=1000 decorrelate to well under 0.2."""
    data = synthetic_observations(1000, 3, seed=31)
    r = correlation_matrix(data, range(3))
    off = r[~np.eye(3, dtype=bool)]
    assert np.max(np.abs(off)) < 0.2


def test_observation_matrix_validation():
    with pytest.raises(ValueError):
        ObservationMatrix([[1.0, 2.0]])  # only one row
    with pytest.raises(ValueError):
        ObservationMatrix([[1.0], [np.nan]])
    with pytest.raises(ValueError):
        ObservationMatrix(np.zeros((3,)))  # not 2-D


def test_observation_matrix_read_only():
    data = synthetic_observations(10, 2, seed=37)
    with pytest.raises(ValueError):
        data.values[0, 0] = 99.0


def test_model_slices_match_pairwise_pearson():
    """Model entries equal pearson() on the raw columns, bit for bit."""
    data = synthetic_observations(35, 6, seed=41)
    model = build_correlation_model(data, [0, 1, 2, 3], [4, 5])
    for i, ci in enumerate(model.predictors):
        for j, cj in enumerate(model.predictors):
            if i != j:
                assert model.rx_rows[i][j] == pearson(data.column(ci), data.column(cj))
    for t, cr in enumerate(model.responders):
        for j, cj in enumerate(model.predictors):
            assert model.ry_rows[t][j] == pearson(data.column(cr), data.column(cj))


def test_model_rejects_overlap_and_empties():
    data = synthetic_observations(20, 4, seed=43)
    with pytest.raises(ValueError):
        build_correlation_model(data, [0, 1], [1, 2])
    with pytest.raises(ValueError):
        build_correlation_model(data, [], [3])
    with pytest.raises(ValueError):
        build_correlation_model(data, [0, 9], [3])
