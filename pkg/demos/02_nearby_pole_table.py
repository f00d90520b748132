"""How a second pole near the unit disk spoils extrapolation.

x(t) = sqrt((1 - t)(1 - t/P)) has branch points at t = 1 and t = P. The
ratio c_n / c_{n+1} still tends to 1, but the further P is from the disk,
the better the rho algorithm recovers that limit from d + 1 ratios.
"""
from pole_scout.experiments import PAPER_DEGREES, PAPER_POLES, format_pole, run_error_table

report = run_error_table(PAPER_POLES, PAPER_DEGREES, ["rho"])
print(f"{'P':>10} " + " ".join(f"{'d=' + str(d):>9}" for d in PAPER_DEGREES))
for label, row in zip(report.rows, report.min_errors("rho")):
    print(f"{label:>10} " + " ".join(f"{e:9.1e}" for e in row))

# dropping the last ratio: d ratios from d + 1 coefficients
alt = run_error_table(PAPER_POLES, PAPER_DEGREES, ["rho"], ratio_count="d")
print("\nwith d ratios:")
for P, row in zip(PAPER_POLES, alt.min_errors("rho")):
    print(f"{format_pole(P):>10} " + " ".join(f"{e:9.1e}" for e in row))

# the other three accelerators on the same sequences
every = run_error_table(PAPER_POLES, [32], ["theta", "aitken", "richardson"])
print("\nd = 32, other algorithms:")
for alg in ("theta", "aitken", "richardson"):
    print(f"{alg:>10} " + " ".join(f"{row[0]:9.1e}" for row in every.min_errors(alg)))

# the CSV the command line writes
print()
print(report.to_csv())
