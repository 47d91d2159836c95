"""
Cremona reduction with certificate words
========================================

"""

# Every class in the rational model reduces to a small normal form
# through reflections along E_i-E_j and H-E_i-E_j-E_k.  The reduction
# returns the normal form together with the word that realizes it.
from latwist import LatticeModel, cremona_reduce, parse_class, print_class
from latwist.lattice import mat_vec

model = LatticeModel.rational(6)

for text in (
    "2H-E1-E2-E3-E4-E5-E6",
    "2H-E1-E2-E3-E4-E5",
    "E2-E5",
    "5H-2E1-E2-E3-E4",
):
    xi = parse_class(text, model)
    nf = cremona_reduce(xi)
    print(f"{text:24s} -> {print_class(nf.representative):18s} [{nf.kind}]")
    for g in nf.word.generators:
        print(" " * 28 + "R(" + print_class(g) + ")")

# The word is a certificate: its matrix carries the input to the
# representative (up to the recorded sign).
xi = parse_class("2H-E1-E2-E3-E4-E5-E6", model)
nf = cremona_reduce(xi)
image = mat_vec(nf.word.matrix, xi.coeffs)
print("certificate sound:", image == nf.representative.coeffs)

# Some classes cannot reach a spherical normal form; the verdict names
# the rule that stops the reduction.
model11 = LatticeModel.rational(11)
stuck = parse_class("3H+E1-E2-E3-E4-E5-E6-E7-E8-E9-E10-E11", model11)
nf = cremona_reduce(stuck)
print("stuck class verdict:", nf.kind)
