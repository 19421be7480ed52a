"""Orthogonality under the negative-multinomial weight.

Inner products are exact partial sums over shells |x| = k together with a
certified bound on the rest of the lattice.  Norms have a closed form.
"""

from fractions import Fraction as F

from meixner import MeixnerSpec, family_triangular, from_weights
from meixner.orthogonality import (
    inner_product,
    norm_closed_form,
    truncated_inner_product,
    verify_orthogonality,
)

spec = MeixnerSpec(from_weights([F(1, 3)]), 1)
for X in (5, 10, 20, 40):
    r = truncated_inner_product(spec, (1,), (1,), X)
    print(f"|x| <= {X:2d}: {float(r.value):.15f}  tail <= {float(r.tail_estimate):.2e}")
r = inner_product(spec, (1,), (1,), F(1, 10 ** 12))
print("certified:", float(r.value), "at truncation", r.truncation)
print("closed form:", norm_closed_form(spec, (1,)).exact)

spec = MeixnerSpec(family_triangular([F(1, 3), F(1, 4)]), F(3, 2))
off = inner_product(spec, (1, 0), (0, 2), F(1, 10 ** 10))
print("<P_(1,0), P_(0,2)> =", float(off.value), "tail", float(off.tail_estimate))

# For non-integer beta the norm carries an irrational factor c0^(-beta).
norm = norm_closed_form(spec, (1, 1))
print("norm of P_(1,1):", norm.approx(30), "exact:", norm.exact)
print(verify_orthogonality(spec, 2, F(1, 10 ** 10)).counts())
