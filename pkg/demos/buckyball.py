# Odd cycle transversal of C60, and why it is as large as it can be
#
# Run: python3 demos/buckyball.py

from oddplanar.analysis import evaluate_bounds, nu_certificate
from oddplanar.generators import gc_fullerene, goldberg_coxeter
from oddplanar.tjoin import extremal_packing, verify_moat_packing

# C60 is the cubic dual of the Goldberg-Coxeter triangulation GC(1,1)
c60 = gc_fullerene(1, 1)
print(c60)

# The transversal is a minimum T-join in the dual, with T the 12 pentagons.
rep = evaluate_bounds(c60, exact_alpha=True)
print("tau_odd       ", rep.tau)
print("bound squared ", rep.bound_general_sq, "  (12n/5)")
print("5 tau^2 = 12n ", 5 * rep.tau ** 2 == 12 * rep.n)

# Deleting the transversal leaves a bipartite graph, so the cut is |E| - tau.
print("maxcut        ", rep.maxcut.size, "of", rep.edges, "edges")
print("alpha         ", rep.alpha.exact, "lower bound", rep.alpha.lower)

# Lower bound side: twelve width-1 moats around the degree-5 vertices of the
# triangulation give 12 disjoint odd cuts.
tri = goldberg_coxeter("icosahedron", 1, 1)
verdict = verify_moat_packing(tri, extremal_packing(tri))
print()
print("\n".join(verdict.lines()))
print("packing width ", verdict.total_width)

# Those cuts are odd cycles of C60 itself.
nu = nu_certificate(c60)
print("odd cycles    ", nu.size, "via", nu.method)

# The same holds along the whole GC(k,k) family.
print()
for k in (1, 2, 3):
    r = evaluate_bounds(gc_fullerene(k, k))
    print(f"GC({k},{k})  n={r.n:4d}  tau={r.tau:3d}  equality={r.equality}")
r = evaluate_bounds(gc_fullerene(2, 1))
print(f"GC(2,1)  n={r.n:4d}  tau={r.tau:3d}  equality={r.equality}  aut={r.aut_order}")
