"""Walk through the Lie series of the symmetric elements in F3[<Q8,g> x C3].

Here <Q8,g> has g central with g^2 = x^2 (order 16), and the orientation is
-1 exactly off the kernel <x, y, h1>.
"""
from involution_lab import Analysis, CATALOG

entry = CATALOG["q8ext_c3"]
G = entry.group()
an = Analysis(G, entry.orientation(G), entry.characteristic, name="q8ext_c3")
print(f"|G| = {G.order}, kernel order {len(an.orientation.kernel)}, field F{an.p}")
print(f"dim (FG)+ = {an.sym.shape[0]} of {G.order}")

# lower Lie central series: gamma^1 = (FG)+, gamma^{n+1} = [gamma^n, (FG)+]
print("lower series dims ", an.lower.dims, "-> t =", an.lower.index)

# strong chain started at the whole algebra, and the one started at (FG)+
print("strong chain dims ", an.strong.dims, "-> tL =", an.strong.index)
print("set-start dims    ", an.strong_set.dims, "-> index", an.strong_set.index)

# the augmentation filtration of the normal 3-part bounds everything
print("t_nil(P) =", an.t_nil, " filtration dims", [an.filtration_term(k).dim for k in range(an.t_nil + 1)])
print(f"t <= t_nil: {an.lower.index <= an.t_nil}; tL - t_nil = {an.strong.index - an.t_nil}")
