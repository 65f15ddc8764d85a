# Curvature, patches and moats on a small sphere triangulation
#
# Run: python3 demos/moats.py

from oddplanar.curvature import make_patch, moat, moat_identities_check
from oddplanar.generators import disc, five_patch_example, goldberg_coxeter

tri, L = five_patch_example()
p = make_patch(tri, L)

# curvature of a vertex set is the sum of 6 - degree
print("patch", sorted(v + 1 for v in L))
print("area", p.area, "boundary", p.boundary_length, "curvature", p.curvature)

# each band of the moat adds 2|boundary| + 6 - c faces
m = moat(tri, L, 2)
print("bands", [len(b) for b in m.bands], "total", m.area)
rep = moat_identities_check(tri, L, 2)
print("identities hold:", rep.passed)

# The cone discs D_r(c) meet the isoperimetric bound with equality.
print()
for c in (1, 3, 5):
    for r in range(1, 4):
        d = disc(c, r)
        print(f"c={c} r={r}  area={d.area:3d}  boundary={d.boundary_length:2d}  "
              f"b^2 = (6-c) area: {d.boundary_length ** 2 == (6 - c) * d.area}")

# The closed-form moat area needs more than "each grown region is a patch".
# Here the complement of L has a dangling edge, and the second band is short.
print()
tri = goldberg_coxeter("tetrahedron", 2, 2)
L = {9, 10, 11, 17, 18, 19, 25}
p = make_patch(tri, L)
m = moat(tri, L, 2)
print("bands", [len(b) for b in m.bands], "area", m.area,
      "formula", 2 * 2 * p.boundary_length + (6 - p.curvature) * 4)
print(moat_identities_check(tri, L, 2).precondition_failure)
