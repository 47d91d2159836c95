"""
Factoring isometries into twist words
=====================================

"""

# Lattice isometries that fix the canonical class factor into
# reflections along square -2, canonical-null classes: the homological
# shadows of Lagrangian Dehn twists.
import random

from latwist import (
    FormClass,
    IsometryMatrix,
    LatticeModel,
    ReflectionWord,
    decompose_K,
    decompose_K_alpha,
    decompose_ruled,
    form_pairing,
    parse_class,
    print_class,
    validate,
)

model = LatticeModel.rational(5)

# Build a scrambled isometry from a random twist word, then recover
# some word with the same matrix.
rng = random.Random(5)
pool = [parse_class(t, model) for t in ("E1-E2", "E2-E4", "H-E1-E2-E3", "H-E2-E4-E5")]
word = ReflectionWord(model, tuple(rng.choice(pool) for _ in range(7)))
M = IsometryMatrix(model, word.matrix)
print("validation:", validate(M).ok)

recovered = decompose_K(M)
print(f"input word length 7, recovered length {len(recovered)}:")
for g in recovered.generators:
    print("  R(" + print_class(g) + ")")
print("product equals input:", recovered.matrix == M.entries)

# The area-constrained variant only uses twists whose cores have area
# zero for the given form.  With all areas equal, every core works.
alpha = -model.k0_form()
constrained = decompose_K_alpha(M, alpha)
print("constrained factorization length:", len(constrained))
print("all cores have area zero:",
      all(form_pairing(alpha, g) == 0 for g in constrained.generators))

# Ruled isometries factor through E_i-E_j and F-E_i-E_j twists.
ruled = LatticeModel.ruled(1, 3)
areas = FormClass(ruled, (2, 5, -1, -1, -1))
gens = [parse_class(t, ruled) for t in ("E1-E2", "F-E1-E3", "E2-E3")]
rword = ReflectionWord(ruled, tuple(rng.choice(gens) for _ in range(6)))
RM = IsometryMatrix(ruled, rword.matrix)
out = decompose_ruled(RM, areas)
print("ruled factorization length:", len(out), "sound:", out.matrix == RM.entries)
