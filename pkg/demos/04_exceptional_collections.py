"""The full pipeline: split, order, and verify an exceptional collection.

Line-bundle cohomology is computed exactly from the fan (graded pieces are
reduced cohomology of ray subcomplexes), Ext groups between line bundles
are cohomology of coefficient differences, and a topological sort over the
admissible orientations produces the strongly exceptional order.
"""

from toricsplit import (
    box_product,
    build_named,
    find_strong_order,
    is_strongly_exceptional,
    line_bundle_cohomology,
    thomsen_split,
)

# Cohomology warm-up: the classics on P^1 and P^2.
p1 = build_named("P:1")
for coeffs in [(0, 0), (1, 1), (-1, -1), (2, 3)]:
    table = line_bundle_cohomology(p1, coeffs)
    print(f"P^1 O{coeffs}: h = {table.dims} (degree box radius {table.box})")
p2 = build_named("P:2")
print(f"P^2 canonical: h = {line_bundle_cohomology(p2, (-1, -1, -1)).dims}")

# The twelve Frobenius classes of the d=3 tower admit a strongly
# exceptional order; 144 Ext tables confirm it.
tower = build_named("Xd:3")
zero = tuple(0 for _ in tower.rays)
split = thomsen_split(tower, zero, p=5)
bundles = [rep for _, rep in split.classes.values()]
result = find_strong_order(tower, bundles)
print(f"\nXd:3: strong order found = {result.ok}")
for i, b in enumerate(result.order):
    print(f"  {i:2}: {b}")
print("verified strongly exceptional:",
      is_strongly_exceptional(tower, result.order).passed)

# Product route: the six classes of the del Pezzo hexagon surface, boxed
# with (O, O(1)) on P^1, give twelve bundles on P^1 x dP3.
dp3 = build_named("dP:3")
split = thomsen_split(dp3, tuple(0 for _ in dp3.rays), p=5)
ordered = find_strong_order(dp3, [rep for _, rep in split.classes.values()])
print(f"\ndP3: {len(ordered.order)} classes, strong order found = {ordered.ok}")
product, combined = box_product(p1, [(0, 0), (0, 1)], dp3, ordered.order)
print(f"P^1 x dP3: {len(combined)} product bundles, strongly exceptional = "
      f"{is_strongly_exceptional(product, combined).passed}")
