"""
Symplectic cone membership
==========================

"""

# A form lies in the symplectic cone when its square is positive and
# it pairs positively with every exceptional class.  The test either
# certifies membership or names a violated class.
from latwist import LatticeModel, in_cone, parse_form, print_class

model = LatticeModel.rational(6)
tau = parse_form("3H-E1-E2-E3-E4-E5-E6", model)
res = in_cone(tau)
print("3H-E1-...-E6:", res.verdict)

# A failing form comes with a witness.
model1 = LatticeModel.rational(1)
res = in_cone(parse_form("H", model1))
print("H at n=1:", res.verdict, "witness:", print_class(res.witness))

model3 = LatticeModel.rational(3)
res = in_cone(parse_form("3H-E1-E2-2E3", model3))
print("boundary form:", res.verdict, "witness:", print_class(res.witness))

# For n >= 9 the exceptional set is infinite, so the verdict is only
# valid up to the degree bound used for the scan.
model9 = LatticeModel.rational(9)
tau9 = parse_form("4H-E1-E2-E3-E4-E5-E6-E7-E8-E9", model9)
res = in_cone(tau9, degree_bound=2)
print("n=9 bounded check:", res.verdict, "bound:", res.degree_bound)

# Ruled verdicts carry a caveat: the conditions checked are the
# stated per-model ones.
ruled = LatticeModel.ruled(1, 2)
res = in_cone(parse_form("2T+3F-E1-E2", ruled))
print("ruled form:", res.verdict, "note:", res.note)
