"""Anyons of the S3 quantum double: S matrix, fusion, degeneracies and entanglement."""

import math

import numpy as np

from loopblocks import character_table, from_name, gauge_blocks, gsd, s_matrix, spec_from_strings
from loopblocks.double_mtc import fusion, quantum_dim
from loopblocks.gauge_engine import anyon_sector, tee_value

ct = character_table(from_name("S3"))
g = ct.group
sm = s_matrix(ct)
names = [a.name(g) for a in sm.anyons]
print("anyons:", ", ".join(f"{n} (d={quantum_dim(ct, a)})" for n, a in zip(names, sm.anyons)))
print("S unitary:", np.allclose(sm.entries @ sm.entries.conj().T, np.eye(len(names))))

c = sm.anyons[names.index("[1]:2")]
print("[1]:2 x [1]:2 =", " + ".join(n for n, t in zip(names, sm.anyons) if fusion(ct, c, c, t)))

for genus in range(3):
    print(f"gsd genus {genus}: {gsd(ct, orientable=True, genus=genus)}")

gbs = gauge_blocks(spec_from_strings("orient:gx=0,gy=0,n=2"), ct)
for a in sm.anyons:
    orbit, sector = anyon_sector(gbs, a.class_rep, a.irrep)
    tee = tee_value(g.order, gbs.num_base_points, orbit.orbit_size, sector.d)
    print(f"TEE {a.name(g):7s} = {tee:.6f}  (2 ln 6 - 2 ln d_a = {2 * math.log(6) - 2 * math.log(quantum_dim(ct, a)):.6f})")
