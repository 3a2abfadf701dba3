"""Block structure of D6 loop-symmetric states across several cuts, checked against a lattice."""

from loopblocks import blocks, character_table, from_name, spec_from_strings
from loopblocks.block_engine import total_dof
from loopblocks.lattice_oracle import compare_blocks, parse_lattice_name

ct = character_table(from_name("D6"))

for cut in ("orient:gx=0,gy=1,n=1", "orient:gx=0,gy=0,n=2", "orient:gx=0,gy=0,n=2,s=+-",
            "orient:gx=1,gy=1,n=1", "nonorient:kx=1,ky=1,n=1", "torus-slab:n=3,k=1", "lens:q=2,p=1"):
    bs = blocks(spec_from_strings(cut), ct)
    print(f"{cut:28s} {bs.summary():40s} total {total_dof(bs)}")

for name in ("torus:2:tube", "klein:2:mobius"):
    ok, emp, _ = compare_blocks(parse_lattice_name(name), ct)
    print(f"lattice {name}: {len(emp)} block shapes, matches prediction: {ok}")
