"""
Counting curves by their 3-torsion
==================================

Brute-force censuses next to the closed-form counts.
"""

from ec3sub import make_field, oracle, torsion3

for p in (7, 13, 19, 31):
    F = make_field(p)
    cyclic = len(oracle.census(F, "cyclic"))
    full = len(oracle.census(F, "full"))
    print(f"p = {p:2d}: cyclic {cyclic:3d} (2p+4)/3 = {(2 * p + 4) / 3:5.2f}   "
          f"full {full} (p+12-(p mod 12))/12 = {(p + 12 - p % 12) // 12}")

# the non-cyclic family is parametrised by a, with a 12-element group of Moebius maps
# identifying isomorphic members; its orbits are the classes
F = make_field(13)
print("orbits over F_13:", torsion3.ga_orbits(F))
print("acting group:", torsion3.ga_group_structure(F).name)

# Burnside: average number of fixed points
rep = torsion3.burnside_report(F)
print("burnside average:", rep.burnside_direct, " formula:", rep.formula)
for e in rep.wrong_table_entries:
    print("tabulated fixed point that is not fixed:", e)
