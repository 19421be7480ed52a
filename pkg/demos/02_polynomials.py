"""The polynomials three ways, and the duality between degrees and variables.

P_n is built from the hypergeometric sum over degree matrices, read off the
generating function, and tabulated on a lattice box.  All three agree exactly.
"""

from fractions import Fraction as F

from meixner import MeixnerSpec, family_triangular, from_weights
from meixner.polynomials import (
    classical_meixner,
    evaluate,
    hypergeometric_polynomial,
    tabulate,
    values_from_generating,
)

spec = MeixnerSpec(from_weights([F(1, 3)]), 1)
for n in range(4):
    print(f"P_{n}(x) =", hypergeometric_polynomial(spec, (n,)).to_string())

# d = 1 reduces to a terminating Gauss series in 1 - u_11.
print("P_3(2) =", evaluate(spec, (3,), (2,)), "=", classical_meixner(spec, 3, 2))

spec = MeixnerSpec(family_triangular([F(1, 3), F(1, 4)]), F(3, 2))
P = hypergeometric_polynomial(spec, (1, 1))
print("P_(1,1) =", P.to_string())

x = (2, 1)
series = values_from_generating(spec, x, 3)
table = tabulate(spec, 3, 2)
for n in [(0, 1), (1, 1), (2, 1)]:
    print(n, evaluate(spec, n, x), series[n], table[n + x])

# Duality: degrees and variables trade places under the involution.
dual = spec.dual()
for n, x in [((1, 2), (0, 3)), ((2, 2), (1, 1))]:
    print(f"P_{n}({x}) = {evaluate(spec, n, x)}   P~_{x}({n}) = {evaluate(dual, x, n)}")
