"""Nilpotency class of the symmetric units, two ways.

Small algebras are handled by brute force: enumerate every symmetric
element, keep the invertible ones and walk gamma_n(U+) until it collapses.
Larger ones use explicit witness units for a lower bound and the strong
chain for the matching upper bound.
"""
import numpy as np

from involution_lab import Analysis, CATALOG, enumerate_symmetric_units, subset_class_exhaustive
from involution_lab.units import sample_symmetric_units, unit_commutator


def context(name):
    entry = CATALOG[name]
    G = entry.group()
    return Analysis(G, entry.orientation(G), entry.characteristic, name=name)


# F3 Q8 with the classical involution: 3^5 symmetric elements
q8 = context("q8")
units = enumerate_symmetric_units(q8.ctx)
print(f"F3Q8: {3 ** q8.sym.shape[0]} symmetric elements, {len(units)} units, "
      f"cl = {subset_class_exhaustive(q8.ctx, units)}")

# F3[<Q8,g> x C3]: too many units to enumerate, so use witnesses
an = context("q8ext_c3")
b = an.unit_bounds
print(f"{an.name}: witness length {b.lower_bound}, upper bound {b.upper_bound} from {b.upper_sources}")
print("  witness congruence holds:", b.witness.congruence)
print("  cl + 1 =", b.value + 1, " t =", an.lower.index)

# a random commutator of two symmetric units lies in 1 + S^(2)
rng = np.random.default_rng(1)
(u, ui), (v, vi) = sample_symmetric_units(an.ctx, 2, rng, normal_p=an.p_part)
c = unit_commutator(an.ctx, u, v, ui, vi)
print("  (u, v) - 1 in S^(2):", an.strong.term(2).contains(an.ctx.norm(c - an.ctx.one())))
