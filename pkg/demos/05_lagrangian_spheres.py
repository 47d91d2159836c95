"""
Lagrangian sphere classes
=========================

"""

# A class of square -2 with canonical pairing 0 is realized by a
# Lagrangian sphere for a given form exactly when the form assigns it
# area zero.  The test reports the verdict, the failed clause, and for
# positive answers a reduction certificate.
from latwist import LatticeModel, is_lagrangian_spherical, parse_class, parse_form

model = LatticeModel.rational(2)
xi = parse_class("E1-E2", model)

equal = parse_form("3H-E1-E2", model)
res = is_lagrangian_spherical(xi, equal)
print("equal areas:   ", "Yes" if res.yes else f"No: {res.reason}")

uneven = parse_form("3H-E1-2E2", model)
res = is_lagrangian_spherical(xi, uneven)
print("uneven areas:  ", "Yes" if res.yes else f"No: {res.reason}")

# The certificate word shows how the class reaches its normal form.
model4 = LatticeModel.rational(4)
xi = parse_class("H-E1-E2-E3", model4)
tau = parse_form("3H-E1-E2-E3-1/2*E4", model4)
res = is_lagrangian_spherical(xi, tau)
print("ternary class: ", "Yes" if res.yes else "No", "kind:", res.kind)
print("characteristic:", res.characteristic)

# Classes that are not spherical fail regardless of areas.
res = is_lagrangian_spherical(parse_class("H-2E1", model4), tau)
print("H-2E1:         ", "Yes" if res.yes else f"No: {res.reason}")

# The ruled model works the same way through its own class list.
ruled = LatticeModel.ruled(1, 2)
res = is_lagrangian_spherical(
    parse_class("F-E1-E2", ruled), parse_form("2T+2F-E1-E2", ruled)
)
print("ruled fiber class:", "Yes" if res.yes else f"No: {res.reason}")
