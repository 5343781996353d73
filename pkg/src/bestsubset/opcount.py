"""Arithmetic operation counting for the per-subset kernels.

The selling point of the determinant-ratio method is its operation
count, so the count has to be measured, not asserted. This module wraps
scalar values in a counting type and pushes them through the very same
kernel functions production uses; every +, - (counted as an addition),
* and / is tallied. Comparisons, copies, abs and index arithmetic are
free, matching how the reference counts are stated.

Counting conventions worth knowing before reading the numbers:

* a dot product accumulates into a running sum starting from 0, and the
  first addition into that accumulator is counted like any other;
* the all-ones offset column participates in predictions as a real
  multiplication;
* pivot reciprocals are taken once and reused, so a factorisation plus
  any number of solves spends exactly one division per pivot.

Predicted counts are evaluated in exact rational arithmetic from the
closed-form polynomials; they are integers for every valid (k, d, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import hat
from .errors import InternalNumericError, SingularMatrixError
from .kernels import conditional_uuc, omega_sq_stacked, triangulate
from .stats import build_correlation_model, synthetic_observations

__all__ = [
    "OpTally",
    "CountingTally",
    "counted",
    "predicted_counts",
    "measure_counts",
    "COUNT_METHODS",
    "count_table",
    "format_count_table",
]

COUNT_METHODS = ("alg1", "alg2", "hat-single", "hat-a", "hat-b")


@dataclass(frozen=True)
class OpTally:
    """Immutable snapshot of counted arithmetic."""

    adds: int
    muls: int
    divs: int

    @property
    def total(self) -> int:
        return self.adds + self.muls + self.divs


class CountingTally:
    """Mutable accumulator shared by all counted values of one run."""

    __slots__ = ("adds", "muls", "divs")

    def __init__(self):
        self.adds = 0
        self.muls = 0
        self.divs = 0

    def snapshot(self) -> OpTally:
        return OpTally(self.adds, self.muls, self.divs)


def _val(x):
    return x.v if type(x) is _Counted else x


class _Counted:
    """A float that reports every arithmetic operation to its tally.

    Mixed expressions with plain numbers count too, via the reflected
    operators. Unary minus and abs are free, as are all comparisons.
    """

    __slots__ = ("v", "t")

    def __init__(self, v, t):
        self.v = v
        self.t = t

    def __add__(self, o):
        self.t.adds += 1
        return _Counted(self.v + _val(o), self.t)

    def __radd__(self, o):
        self.t.adds += 1
        return _Counted(_val(o) + self.v, self.t)

    def __sub__(self, o):
        self.t.adds += 1
        return _Counted(self.v - _val(o), self.t)

    def __rsub__(self, o):
        self.t.adds += 1
        return _Counted(_val(o) - self.v, self.t)

    def __mul__(self, o):
        self.t.muls += 1
        return _Counted(self.v * _val(o), self.t)

    def __rmul__(self, o):
        self.t.muls += 1
        return _Counted(_val(o) * self.v, self.t)

    def __truediv__(self, o):
        self.t.divs += 1
        return _Counted(self.v / _val(o), self.t)

    def __rtruediv__(self, o):
        self.t.divs += 1
        return _Counted(_val(o) / self.v, self.t)

    def __neg__(self):
        return _Counted(-self.v, self.t)

    def __abs__(self):
        return abs(self.v)

    def __float__(self):
        return float(self.v)

    def __lt__(self, o):
        return self.v < _val(o)

    def __le__(self, o):
        return self.v <= _val(o)

    def __gt__(self, o):
        return self.v > _val(o)

    def __ge__(self, o):
        return self.v >= _val(o)

    def __eq__(self, o):
        return self.v == _val(o)

    __hash__ = None

    def __repr__(self):
        return f"counted({self.v!r})"


def counted(value, tally: CountingTally) -> _Counted:
    return _Counted(float(value), tally)


def _wrap_vec(vec, t):
    return [_Counted(float(v), t) for v in vec]


def _wrap_mat(mat, t):
    return [[_Counted(float(v), t) for v in row] for row in mat]


# ---------------------------------------------------------------------------
# closed-form predictions
# ---------------------------------------------------------------------------

def _poly(*terms) -> int:
    total = Fraction(0)
    for t in terms:
        total += t
    if total.denominator != 1:
        raise InternalNumericError(f"count polynomial gave non-integer {total}")
    return int(total)


def predicted_counts(method: str, k: int, d: int | None = None, m: int = 1) -> OpTally:
    """Closed-form operation counts for one scored subset.

    For the determinant-ratio kernels this covers one subset and all m
    responders. For the baselines d is required because the residual pass
    touches every observation. "hat-single" is the one-responder baseline
    count; "hat-a"/"hat-b" are the two multi-responder schedules and
    "alg1" scales its single-responder cost by m.
    """
    if method not in COUNT_METHODS:
        raise ValueError(f"unknown count method {method!r}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    kf = Fraction(k)
    k2 = kf * kf
    k3 = k2 * kf
    if method == "alg1":
        adds = m * _poly(k3 / 6, k2 / 2, kf / 3)
        muls = m * _poly(k3 / 6, k2, 5 * kf / 6)
        return OpTally(adds, muls, m * k)
    if method == "alg2":
        adds = _poly(k3 / 6, -kf / 6, m * (k2 / 2 + kf / 2))
        muls = _poly(k3 / 6, k2 / 2, -5 * kf / 3, 1, m * (k2 / 2 + 3 * kf / 2 - 1))
        return OpTally(adds, muls, k - 1)
    if d is None:
        raise ValueError(f"method {method!r} needs d")
    if method == "hat-single":
        if m != 1:
            raise ValueError("hat-single is defined for m=1")
        adds = _poly((kf + 3) * d, k3 / 6, 3 * k2 / 2, 4 * kf / 3)
        muls = _poly((kf + 2) * d, k3 / 6, 2 * k2, 17 * kf / 6, 1)
        return OpTally(adds, muls, k + 1)
    if method == "hat-a":
        adds = _poly(k3 / 6, k2 / 2, kf / 3, m * (kf * d + 3 * d + k2 + kf))
        muls = _poly(k3 / 6, k2, 5 * kf / 6, m * (kf * d + 2 * d + k2 + 2 * kf + 1))
        return OpTally(adds, muls, k + 1)
    # hat-b
    adds = _poly(k3 / 6, k2 / 2, kf / 3, m * (kf * d + 3 * d), (k2 + kf) * d)
    muls = _poly(k3 / 6, k2, 5 * kf / 6, m * (kf * d + 2 * d), (k2 + 2 * kf + 1) * d)
    return OpTally(adds, muls, k + 1)


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------

def _run_counted(method, model, tables, cols, ys, k, m, tally):
    subset = tuple(range(k))
    if method == "alg1":
        for t in range(m):
            a = _wrap_mat(_stacked(model, subset, t), tally)
            omega_sq_stacked(a)
    elif method == "alg2":
        rx = _wrap_mat([[model.rx_rows[i][j] for j in subset] for i in subset], tally)
        cache = triangulate(rx)
        for t in range(m):
            rho = _wrap_vec([model.ry_rows[t][j] for j in subset], tally)
            conditional_uuc(cache, rho)
    else:
        xtx = _wrap_mat(hat.assemble_xtx(tables, subset), tally)
        xtys = [_wrap_vec(hat.assemble_xty(tables, subset, t), tally) for t in range(m)]
        wcols = [_wrap_vec(c, tally) for c in cols]
        wys = [_wrap_vec(y, tally) for y in ys]
        if method == "hat-b":
            hat.scan_fit_b(xtx, xtys, wcols, wys, tables.d)
        else:
            hat.scan_fit_a(xtx, xtys, wcols, wys, tables.d)


def _stacked(model, subset, t):
    k = len(subset)
    a = [[0.0] * (k + 1) for _ in range(k + 1)]
    for i, ci in enumerate(subset):
        for j, cj in enumerate(subset):
            a[i][j] = model.rx_rows[ci][cj]
        a[i][k] = model.ry_rows[t][ci]
        a[k][i] = model.ry_rows[t][ci]
    a[k][k] = 1.0
    return a


def measure_counts(method: str, k: int, d: int = 30, m: int = 1,
                   trials: int = 3, seed: int = 0) -> OpTally:
    """Execute one scored subset with counting scalars and return the tally.

    Runs ``trials`` times on fresh random data and insists the tallies
    agree: the kernels are straight-line given the shape, so any
    disagreement means a data-dependent branch crept in. Random inputs
    that happen to be singular are regenerated.
    """
    if method not in COUNT_METHODS:
        raise ValueError(f"unknown count method {method!r}")
    if method == "hat-single" and m != 1:
        raise ValueError("hat-single is defined for m=1")
    if d < k + 2:
        raise ValueError(f"need d >= k+2 observations, got d={d}, k={k}")
    tallies = []
    attempt = 0
    while len(tallies) < trials and attempt < trials + 20:
        data = synthetic_observations(d, k + m, seed=seed + 7919 * attempt)
        attempt += 1
        pred = tuple(range(k))
        resp = tuple(range(k, k + m))
        try:
            model = build_correlation_model(data, pred, resp)
            tables = None
            cols = ys = None
            if method.startswith("hat"):
                tables = hat.gram_products(data, pred, resp)
                cols = [[1.0] * d] + [data.column_list(c) for c in pred]
                ys = [data.column_list(c) for c in resp]
            tally = CountingTally()
            _run_counted("hat-a" if method == "hat-single" else method,
                         model, tables, cols, ys, k, m, tally)
        except SingularMatrixError:
            continue
        tallies.append(tally.snapshot())
    if len(tallies) < trials:
        raise InternalNumericError("could not generate enough nonsingular instances")
    if any(t != tallies[0] for t in tallies[1:]):
        raise InternalNumericError(
            f"operation counts varied across random inputs for {method}: {tallies}"
        )
    return tallies[0]


# ---------------------------------------------------------------------------
# measured vs predicted tables
# ---------------------------------------------------------------------------

def count_table(methods=COUNT_METHODS, ks=range(1, 9), d: int = 30, ms=(1,)):
    """Measured and predicted counts over a (method, k, m) grid.

    Returns a list of row dicts, one per (method, k, m), ready for CSV or
    text rendering. Every method appears at every requested m except
    "hat-single", which is only defined for m=1.
    """
    rows = []
    for method in methods:
        for m in ms:
            if method == "hat-single" and m != 1:
                continue
            for k in ks:
                pred = predicted_counts(method, k, d=d, m=m)
                meas = measure_counts(method, k, d=d, m=m)
                rows.append({
                    "method": method,
                    "k": k,
                    "d": d,
                    "m": m,
                    "adds_measured": meas.adds,
                    "adds_predicted": pred.adds,
                    "muls_measured": meas.muls,
                    "muls_predicted": pred.muls,
                    "divs_measured": meas.divs,
                    "divs_predicted": pred.divs,
                    "exact_match": meas == pred,
                })
    return rows


def format_count_table(rows, fmt: str = "text") -> str:
    """Render count_table rows as CSV or an aligned text table."""
    cols = ["method", "k", "d", "m",
            "adds_measured", "adds_predicted",
            "muls_measured", "muls_predicted",
            "divs_measured", "divs_predicted", "exact_match"]
    if fmt == "csv":
        lines = [",".join(cols)]
        for r in rows:
            lines.append(",".join(str(r[c]) for c in cols))
        return "\n".join(lines) + "\n"
    widths = [max(len(c), max((len(str(r[c])) for r in rows), default=0)) for c in cols]
    def line(values):
        return "  ".join(str(v).rjust(w) for v, w in zip(values, widths))
    out = [line(cols), line(["-" * w for w in widths])]
    for r in rows:
        out.append(line([r[c] for c in cols]))
    return "\n".join(out) + "\n"
