"""
Counting every add, multiply and divide a kernel performs
=========================================================

The scoring kernels are plain scalar loops, so wrapping their inputs in
a counting number type tallies the exact arithmetic cost. Measured
tallies land exactly on closed-form polynomials in k, d and m, which is
what makes the cost comparison between methods airtight.
"""

from bestsubset import count_table, format_count_table, measure_counts
from bestsubset.opcount import CountingTally, counted

# ---------------------------------------------------------------------
# 1. The counting scalar: arithmetic results stay correct while a
#    shared tally records each operation by kind.
# ---------------------------------------------------------------------
tally = CountingTally()
a, b = counted(3.0, tally), counted(4.0, tally)
c = (a + b) * a / b
print(f"(3+4)*3/4 = {float(c)}  ->  adds={tally.adds} muls={tally.muls} divs={tally.divs}")

# ---------------------------------------------------------------------
# 2. Single responder, one subset of size k: the split kernel (alg2)
#    undercuts the stacked one (alg1), and both are tiny next to the
#    d-dependent least-squares baseline.
# ---------------------------------------------------------------------
k, d = 3, 1000
for method in ("alg1", "alg2", "hat-single"):
    kwargs = {"d": d} if method.startswith("hat") else {}
    t = measure_counts(method, k, **kwargs)
    print(f"k={k:>2} {method:>10}: adds={t.adds:>6} muls={t.muls:>6} divs={t.divs}")

# ---------------------------------------------------------------------
# 3. Measured always equals predicted. The table below covers every
#    method over a small grid; exact_match is True in every row.
# ---------------------------------------------------------------------
rows = count_table(ks=(1, 2, 3, 4), d=30, ms=(1, 3))
assert all(r["exact_match"] for r in rows)
print()
print(format_count_table(rows, "text"))

# ---------------------------------------------------------------------
# 4. Why the split kernel wins with many responders: its predictor
#    factorization is paid once per subset, after which each extra
#    responder costs only (k^2+k)/2 adds. The baseline pays ~(k+3)*d
#    adds for every responder again.
# ---------------------------------------------------------------------
k = 3
one = measure_counts("alg2", k, m=1)
ten = measure_counts("alg2", k, m=10)
print(f"alg2 k={k}: m=1 adds={one.adds}, m=10 adds={ten.adds} "
      f"(marginal {(ten.adds - one.adds) / 9:.1f} per responder)")
hat1 = measure_counts("hat-a", k, d=1000, m=1)
hat10 = measure_counts("hat-a", k, d=1000, m=10)
print(f"hat-a k={k} d=1000: m=1 adds={hat1.adds}, m=10 adds={hat10.adds} "
      f"(marginal {(hat10.adds - hat1.adds) / 9:.1f} per responder)")
