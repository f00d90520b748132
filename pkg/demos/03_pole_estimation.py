"""Locating the nearest singularity from Taylor coefficients alone."""
from pole_scout import binomial_series, fabry_estimate, two_pole_series
from pole_scout.series import PowerSeries, scale_argument

# sqrt(1 - t): raw ratio vs rho-accelerated ratio
s = binomial_series(1, 2, 32, "complex-float")
est = fabry_estimate(s, algorithm="rho")
print("sqrt(1-t)        raw", abs(est.raw - 1), " accelerated", abs(est.accelerated - 1))

# moving the pole: sqrt(1 - t/R) has radius of convergence R
for R in (2.0, 5.0, 0.5):
    est = fabry_estimate(scale_argument(s, 1 / R), algorithm="rho")
    print(f"pole at {R:<4}       radius estimate {est.radius:.12f}")

# two poles; the one at t = 1 is nearest
for P in (-0.5 + 1j, -2 + 8j, -4 + 16j):
    for alg in ("rho", "theta", "aitken", "richardson"):
        est = fabry_estimate(two_pole_series(P, 32), algorithm=alg, limit=1)
        print(f"P = {P!s:<10} {alg:>10}: |est - 1| = {abs(est.accelerated - 1):.1e}"
              f"  (best entry {est.diagnostics['min_error']['error']:.1e})")

# a geometric series: the ratio is constant, so nothing needs accelerating
g = PowerSeries([3.0 ** -n for n in range(11)], "complex-float")
print("geometric: radius", fabry_estimate(g).radius)

# the JSON the `pole-estimate` command prints
print(fabry_estimate(two_pole_series(-2 + 8j, 16)).to_json(indent=1))
