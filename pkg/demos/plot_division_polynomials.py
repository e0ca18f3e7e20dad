"""
Division polynomials and the splitting of psi_3
===============================================

"""

from collections import Counter

from ec3sub import make_field, torsion3
from ec3sub.poly import division_polynomial, factor_pattern, monic_3div

F = make_field(7)
for n in range(1, 6):
    print(f"psi_{n} for y^2 = x^3 + 2:", division_polynomial(F, 0, 2, n))

# how the monic 3-division quartic factors, tallied over every curve
for p in (7, 13, 19):
    F = make_field(p)
    tally = Counter()
    for A in range(p):
        for B in range(p):
            if (4 * A**3 + 27 * B * B) % p:
                tally[factor_pattern(monic_3div(F, A, B))] += 1
    print(p, dict(sorted(tally.items())))

# a closed-form criterion predicts the pattern without factoring
print(torsion3.SKOLEM_CONVENTION)
F = make_field(13)
wrong = sum(
    torsion3.skolem_pattern(F, A, B) != torsion3.psi3_pattern(F, A, B)
    for A in range(13) for B in range(13) if (4 * A**3 + 27 * B * B) % 13
)
print("mispredicted over F_13:", wrong)
