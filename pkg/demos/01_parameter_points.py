"""Building points of the parameter set.

Three constructors are shown: Gram-Schmidt from prescribed weights, the
lower-triangular family and the self-dual geometric family.  Every point is
validated on construction; the involution swaps c and c~ and transposes U.
"""

from fractions import Fraction as F

from meixner import family_geometric, family_triangular, from_weights, involution
from meixner.parameters import NotInParameterSet, ZeroParameter, parameter_report, validate


def show(title, point):
    print(title)
    print("  c0      =", point.c0)
    print("  c       =", [str(v) for v in point.c])
    print("  c_tilde =", [str(v) for v in point.c_tilde])
    for row in point.U:
        print("   ", " ".join(f"{str(v):>6}" for v in row))


# One variable: c = 1/3 forces u_11 = 3 and c~ = 1/3.
show("gram, c = (1/3)", from_weights([F(1, 3)]))

# Mixing parameters tilt the start vectors before orthogonalization.
show("gram, c = (1/5, 1/7), mixing 2", from_weights([F(1, 5), F(1, 7)], [2]))

tri = family_triangular([F(1, 3), F(1, 4), F(1, 6)])
show("triangular, c = (1/3, 1/4, 1/6)", tri)
show("its involution", involution(tri))

geo = family_geometric(F(1, 2), 2)
show("geometric, q = 1/2, d = 2", geo)
print("self-dual:", involution(geo) == geo)

# Each defining identity is checked entry by entry.
print(parameter_report(tri).counts())

# Changing one entry of U takes the point out of the set.
try:
    validate(geo.with_entry(1, 2, 3))
except NotInParameterSet as exc:
    print("rejected:", exc.diagnostics[0])

# c0 = 1 - |c| may not vanish.
try:
    family_triangular([F(1, 2), F(1, 2)])
except ZeroParameter as exc:
    print("rejected:", exc)
