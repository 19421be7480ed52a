"""Difference operators with the polynomials as joint eigenfunctions.

The variable operators act on x and have eigenvalue n_i; the degree operators
act on n and have eigenvalue x_i.  Both families commute.
"""

import random
from fractions import Fraction as F

from meixner import MeixnerSpec, family_geometric, from_weights
from meixner.algebra import Polynomial, random_polynomial
from meixner.operators import (
    apply_on_grid,
    build_degree_operator,
    build_variable_operator,
    verify_bispectrality,
    verify_commutativity,
)
from meixner.polynomials import hypergeometric_polynomial, tabulate_dict

spec = MeixnerSpec(from_weights([F(1, 3)]), 1)
op = build_variable_operator(spec, 1)
for term in op.shift_terms():
    print("shift", term.shift, "coefficient", term.coefficient.to_string())
x = Polynomial.variable(1, 0)
print("L(1 - 2x) =", op(1 - 2 * x).to_string())

spec = MeixnerSpec(family_geometric(F(1, 2), 2), F(3, 2))
P = hypergeometric_polynomial(spec, (2, 1))
for i in (1, 2):
    print(f"L_x{i} P_(2,1) == {(2, 1)[i - 1]} * P:", build_variable_operator(spec, i)(P) == (2, 1)[i - 1] * P)

# The degree operator works on a table of values n -> P_n(x) at fixed x.
at_x = (3, 1)
table = {n: v for (n, xx), v in tabulate_dict(spec, 3, 3).items() if xx == at_x}
Ln = build_degree_operator(spec, 1)
print("(L_n1 P)(x=(3,1)) at n=(1,1):", apply_on_grid(Ln, table, (1, 1)), "vs", 3 * table[(1, 1)])

report = verify_bispectrality(spec, 3, 3)
print("bispectrality:", report.counts())

rng = random.Random(0)
samples = [random_polynomial(rng, 2, 5) for _ in range(5)]
print("commutativity:", verify_commutativity(spec, samples).counts())

# A single wrong entry of U breaks the eigenvalue equations.
bad = MeixnerSpec(spec.point.with_entry(1, 1, 2), spec.beta)
failure = verify_bispectrality(bad, 2, 2).failures()[0]
print("perturbed:", failure.identity, failure.params)
