"""Lie nilpotency index of (FG)+ against the order of the derived subgroup.

Cyclic G' gives t = |G'| + 1. The noncyclic example is C3 wr C3 read from
a Cayley table file, where G' = C3 x C3 and the index drops below |G'| + 1.
"""
from pathlib import Path

from involution_lab import Analysis, CATALOG, build_group, trivial_orientation

entry = CATALOG["es3_c2"]
G = entry.group()
an = Analysis(G, entry.orientation(G), 3, name="es3_c2")
print(f"extraspecial(3) x C2: |G'| = {an.derived_order}, cyclic {an.derived_cyclic}, t = {an.lower.index}")

table = Path(__file__).resolve().parent.parent / "tests" / "data" / "c3_wr_c3.table"
W = build_group(f"table:{table}")
wr = Analysis(W, trivial_orientation(W), 3, name="c3_wr_c3")
print(f"C3 wr C3: |G'| = {wr.derived_order}, cyclic {wr.derived_cyclic}, "
      f"t = {wr.lower.index}, tL(FG) = {wr.whole_strong.index}")
