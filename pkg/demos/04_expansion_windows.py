"""Fitting c_n / c_{n+1} ~ 1 + sum_k gamma_k / n**k over a window of n.

A far second pole leaves an expansion in 1/n that holds over a window
[N, M]; a near one does not, and the least-squares residual shows it.
"""
from fractions import Fraction

from pole_scout import fit_inverse_n_expansion, lemma1_check, lemma2_check, ratio_sequence, two_pole_series
from pole_scout.series import binomial_series

for P in (-0.5 + 1j, -0.5 + 2j, -1 + 4j, -2 + 8j, -4 + 16j):
    fit = fit_inverse_n_expansion(ratio_sequence(two_pole_series(P, 64)), 16, 48, 3)
    g1 = fit.coefficients[0]
    print(f"P = {P!s:<10} residual {fit.residual:8.1e}   gamma_1 = {g1.real:+.4f}{g1.imag:+.4f}j")

# single pole: gamma_1 -> 1 + p/q
fit = fit_inverse_n_expansion(ratio_sequence(binomial_series(2, 7, 400)), 200, 390, 2)
print("(1-t)^(2/7): gamma_1 =", fit.coefficients[0].real, " vs", 1 + 2 / 7)

# ratio of a product, rewritten through the ratios of its factors
a = [Fraction(k + 2, k + 1) for k in range(8)]
b = [Fraction(1, 3 ** k) for k in range(8)]
res = lemma1_check(a, b, 5)
print("product ratio:", res.lhs, " factored:", res.rhs, " gap:", res.gap)

# reciprocal of a Laurent polynomial in P, expanded in 1/P
for m in range(5):
    res = lemma2_check([1, 1], Fraction(10), m)
    print(f"m = {m}: truncated {float(res.truncated):.10f}, error {res.error:.2e}")
