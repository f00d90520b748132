"""Exact rho extrapolation on the path x**q = (1 - t)**p.

The x(0) = 1 branch is (1 - t)**(p/q). Its coefficient ratios
c_n / c_{n+1} = (n + 1) / (n - p/q) creep towards the pole at t = 1 like 1/n.
"""
from fractions import Fraction

from pole_scout import monomial_path_series, ratio_sequence, rho_table

# p = 7, q = 18: the first three ratios, starting at n = 1
s = monomial_path_series(7, 18, 4)
r = ratio_sequence(s, start=1)
print("ratios:", [str(v) for v in r.values])

# raw ratios are still far from 1 ...
print("raw errors:", [float(abs(v - 1)) for v in r.values])

# ... but the second rho column is already exact, because the ratio is a
# rational function of n of degree (1, 1)
table = rho_table(r.values)
print("rho column 1:", [str(v) for v in table.columns[1]])
print("rho column 2:", [str(v) for v in table.columns[2]])

# the same holds for every p < q <= 20
failures = []
for q in range(2, 21):
    for p in range(1, q):
        vals = ratio_sequence(monomial_path_series(p, q, 4), start=1).values
        if rho_table(vals).columns[2][0] != 1:
            failures.append((p, q))
print(f"{sum(q - 1 for q in range(2, 21))} cases, failures: {failures}")

# the closed form, checked exactly on a longer series
r = ratio_sequence(monomial_path_series(3, 11, 40))
assert all(r.at(n) == Fraction(n + 1) / (n - Fraction(3, 11)) for n in r.indices)
print("closed form holds for n = 0 ..", r.stop - 1)
