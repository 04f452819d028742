"""Wall relations and Bondal's criterion.

Every codimension-1 cone sits between two maximal cones, giving a unique
relation u+ + u- + sum a_i u_i = 0; the a_i are intersection numbers of the
toric divisors through the corresponding curve.  The criterion (all
a_i >= -1, at most one equal) predicts which fans carry a full strongly
exceptional collection of Frobenius summands.
"""

from toricsplit import bondal_criterion, build_named, wall_relation, walls

# On P^2 every boundary curve is a line of self-intersection +1; on the
# Hirzebruch surface F2 the special section has self-intersection -2.
for spec in ["P:2", "dP:3", "F:2"]:
    fan = build_named(spec)
    print(f"{spec}: wall coefficients "
          f"{[wall_relation(fan, w).coeffs for w in walls(fan)]}")

# The d=3 tower passes on all 18 walls.
tower = build_named("Xd:3")
verdict = bondal_criterion(tower)
print(f"\nXd:3: {len(verdict.relations)} walls, criterion pass = {verdict.passed}")
names = ["v0", "v1", "v2", "v3", "v4", "w0", "w1", "w2"]
for rel in verdict.relations:
    w = rel.wall
    rays = ",".join(names[i] for i in w.rays)
    print(f"  <{rays}>  u+ = {names[w.u_plus]}, u- = {names[w.u_minus]}, "
          f"coeffs {rel.coeffs}")

# F2 fails with the -2 section as witness; d=5 passes over 180 walls.
f2 = bondal_criterion(build_named("F:2"))
print(f"\nF2: pass = {f2.passed}, witness coefficients "
      f"{[rel.coeffs for rel in f2.violations]}")
five = bondal_criterion(build_named("Xd:5"))
print(f"Xd:5: {len(five.relations)} walls, pass = {five.passed}")
