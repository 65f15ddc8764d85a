# Heptagons break the bound: a family with tau_odd growing like n/8
#
# Run: python3 demos/face_sizes.py

from oddplanar.analysis import nu_certificate, oct
from oddplanar.generators import family57, platonic
from oddplanar.planar_map import validate_class

# Among cubic maps with faces of size at most 6, tau_odd^2 <= 12n/5.
d = platonic("dodecahedron")
print("dodecahedron tau", oct(d).tau, " 5 tau^2 =", 5 * oct(d).tau ** 2, "<= 12n =", 12 * d.n)

# Allow faces of size 7 and the transversal grows linearly.
for k in (1, 2, 3, 4):
    fam = family57(k)
    g = fam.graph
    cls = validate_class(g)
    tau = oct(g).tau
    nu = nu_certificate(g).size
    print(f"k={k}  n={g.n:3d}  faces={cls.face_histogram}  packing={len(fam.packing):2d}  "
          f"nu>={nu:2d}  tau={tau:2d}  n/8={g.n / 8:.1f}  12n/5 bound={(12 * g.n / 5) ** 0.5:.2f}")
