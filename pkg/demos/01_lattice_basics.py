"""
Lattice models, pairings, and reflections
=========================================

"""

# Two ambient lattices are supported: the rational model with basis
# H, E1..En and the ruled model with basis T, F, E1..En.
from latwist import LatticeModel, parse_class, pairing, reflect

rational = LatticeModel.rational(3)
ruled = LatticeModel.ruled(2, 1)

H = rational.unit(0)
E1 = rational.E(1)
print("H.H   =", pairing(H, H))
print("E1.E1 =", pairing(E1, E1))

T = ruled.unit(0)
F = ruled.unit(1)
print("T.F   =", pairing(T, F))
print("T.T   =", pairing(T, T))

# The canonical class comes with the model.
print("K0 (rational n=3):", rational.k0().coeffs)
print("K0 (ruled h=2 n=1):", ruled.k0().coeffs)

# Classes are written in a small expression grammar.
xi = parse_class("2H-E1-E2-E3", rational)
print("square of 2H-E1-E2-E3:", pairing(xi, xi))

# Reflections along classes of square +-1 or +-2 generate all the
# symmetries used elsewhere.  Reflecting twice returns the argument.
gamma = parse_class("E1-E2", rational)
once = reflect(gamma, xi)
twice = reflect(gamma, once)
print("reflected:", once.coeffs)
print("reflected twice equals original:", twice == xi)
