"""Walk through the GL(3,2) extension example: two fused Hall {2,3} classes."""

from hallmark import PrimeSet, e_pi_criterion, hall_subgroups, is_pronormal
from hallmark.corpus import extension_tau, format_perm, make_gl32, make_gl32_extension, named_subgroups
from hallmark.structure import conjugate

pi = PrimeSet((2, 3))
rep = hall_subgroups(make_gl32(), pi)
print(f"GL(3,2): {len(rep.classes)} classes of {pi}-Hall subgroups, sizes {[c.size for c in rep.classes]}")

G, _ = make_gl32_extension()
named = named_subgroups("gl32ext", G)
A, H1, H2 = named["A"], named["H1"], named["H2"]
print(f"extension: |G| = {G.order()}, |A| = {A.order}")

classes = hall_subgroups(A, pi).classes
c1 = next(c for c in classes if H1 in c)
c2 = next(c for c in classes if H2 in c)
tau = G.table().index(extension_tau())
swapped = {conjugate(H, tau).key for H in c1.members} == c2.keys()
print(f"tau = {format_perm(extension_tau())} swaps the two A-classes: {swapped}")

w = is_pronormal(G, H1)
g = w.failing()
print(f"H1 pronormal in G: {w.verdict}" + ("" if g is None else f" (fails at g = {format_perm(G.table().perm(g))})"))
print(f"G in E_pi: {hall_subgroups(G, pi).satisfies_E}")
crit = e_pi_criterion(G, A, pi)
print(f"criterion: G/A in E_pi = {crit.quotient_in_E}, stable A-class = {crit.witness is not None}, verdict = {crit.verdict}")
