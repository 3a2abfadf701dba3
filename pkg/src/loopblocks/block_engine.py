"""Block structure of the reduced wavefunction matrix W before gauge refinement.

W is block diagonal in the boundary holonomy label phi. Every block has the
form C^{rows x cols} repeated ``mult`` times, where each dimension factors as
``coeff * |G|**gpow``: the coefficient is topological and the power of |G|
counts geometric (pure gauge) degrees of freedom on the lattice.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .group_core import (
    FiniteGroup,
    centralizer_of_tuple,
    commuting_tuples,
    conjugation_orbits,
    enumerate_homs,
    evaluate_word,
)
from .rep_theory import CharacterTable, K_tensor, R_tensor, closed_hom_count
from .topology import (
    BipartitionSpec,
    GenericPresentation,
    Lens,
    Mixed,
    NonorientPair,
    OrientPair,
    SpecError,
    TorusSlab,
    Variant,
    generic_from_spec,
    validate,
)

__all__ = [
    "Block",
    "BlockStructure",
    "Spectrum",
    "SymbolicDim",
    "blocks",
    "blocks_generic",
    "expected_total_dof",
    "spectrum_from_amplitudes",
    "total_dof",
]


@dataclass(frozen=True, order=True)
class SymbolicDim:
    """The integer ``coeff * |G|**gpow``."""

    coeff: int
    gpow: int = 0

    def __post_init__(self) -> None:
        if self.coeff < 0 or self.gpow < 0:
            raise ValueError("SymbolicDim needs coeff >= 0 and gpow >= 0")

    def value(self, order: int) -> int:
        return int(self.coeff) * int(order) ** int(self.gpow)

    def to_json(self) -> dict:
        return {"coeff": int(self.coeff), "gpow": int(self.gpow)}


@dataclass(frozen=True)
class Block:
    """``mult`` copies of a ``rows x cols`` block for boundary label ``label``.

    ``label`` is a tuple of element indices (canonical class representatives
    for surface, lens and generic cuts, canonical orbit representatives for
    torus slabs). ``mult.coeff`` counts the element-level labels merged into
    this entry times any topological replication.
    """

    label: tuple[int, ...]
    mult: SymbolicDim
    rows: SymbolicDim
    cols: SymbolicDim

    def to_json(self) -> dict:
        return {
            "label": [int(x) for x in self.label],
            "rows": self.rows.to_json(),
            "cols": self.cols.to_json(),
            "mult": self.mult.to_json(),
        }


@dataclass
class BlockStructure:
    spec: BipartitionSpec
    group_order: int
    blocks: list[Block]
    dropped: list[tuple[int, ...]] = field(default_factory=list)

    def summary(self) -> str:
        """Topological shape such as ``C^{6x6} + 4C^{3x3} + 9C^{2x2}``."""
        return format_shape(self.shape_counter())

    def shape_counter(self) -> Counter:
        out: Counter = Counter()
        for b in self.blocks:
            out[(b.rows.coeff, b.cols.coeff)] += b.mult.coeff
        return out

    def to_json(self, group: FiniteGroup | None = None) -> dict:
        data = {"blocks": [b.to_json() for b in self.blocks], "total_dof": total_dof(self)}
        if group is not None and group.element_names is not None:
            for entry, b in zip(data["blocks"], self.blocks):
                entry["label_names"] = [group.element_names[x] for x in b.label]
        data["summary"] = self.summary()
        data["dropped"] = [[int(x) for x in lab] for lab in self.dropped]
        return data


def format_shape(counter: Mapping[tuple[int, int], int]) -> str:
    merged: Counter = Counter()
    for key, cnt in counter.items():
        merged[key] += cnt
    parts = []
    for (r, c), cnt in sorted(merged.items(), key=lambda kv: (-kv[0][0] * kv[0][1], kv[0])):
        prefix = "" if cnt == 1 else str(cnt)
        parts.append(f"{prefix}C^{{{r}x{c}}}")
    return " + ".join(parts) if parts else "0"


def total_dof(bs: BlockStructure) -> int:
    """Topological degrees of freedom: sum of mult * rows * cols coefficients."""
    return int(sum(int(b.mult.coeff) * int(b.rows.coeff) * int(b.cols.coeff) for b in bs.blocks))


def expected_total_dof(spec: BipartitionSpec | Variant, ct: CharacterTable) -> int:
    """|Hom(pi_1(M, A), G)| from closed formulas, independent of the block engine."""
    spec, man = validate(spec)
    g = ct.group
    nbp = spec.lattice.num_base_points
    order = g.order
    if man.kind == "surface":
        base = closed_hom_count(ct, orientable=bool(man.orientable), genus=int(man.genus))
    elif man.kind == "torus":
        base = commuting_tuples(g, man.dim).count
    elif man.kind == "lens":
        q = man.extra[0]
        base = order if q == 0 else int(np.count_nonzero(g.power_map(q) == 0))
    else:
        raise SpecError("no closed formula for generic presentations")
    return int(base) * order ** (nbp - 1)


# ---------------------------------------------------------------- dispatch


def blocks(spec: BipartitionSpec | Variant, ct: CharacterTable) -> BlockStructure:
    """Block structure of W for a validated bipartition and a character table."""
    spec, _ = validate(spec)
    v = spec.variant
    if isinstance(v, (OrientPair, NonorientPair, Mixed)):
        return _surface_blocks(spec, ct)
    if isinstance(v, TorusSlab):
        return _torus_slab_blocks(spec, ct)
    if isinstance(v, Lens):
        return _lens_blocks(spec, ct)
    if isinstance(v, GenericPresentation):
        return blocks_generic(spec, ct.group)
    raise SpecError(f"unsupported variant {type(v).__name__}")


def _side_tensor(ct: CharacterTable, orientable: bool, genus: int, n: int) -> np.ndarray:
    return R_tensor(ct, genus, n) if orientable else K_tensor(ct, genus, n)


def _surface_blocks(spec: BipartitionSpec, ct: CharacterTable) -> BlockStructure:
    v = spec.variant
    lat = spec.lattice
    n = v.n
    if isinstance(v, OrientPair):
        tx = _side_tensor(ct, True, v.gx, n)
        ty = _side_tensor(ct, True, v.gy, n)
        signs = v.signs
    elif isinstance(v, NonorientPair):
        tx = _side_tensor(ct, False, v.kx, n)
        ty = _side_tensor(ct, False, v.ky, n)
        signs = (1,) * n
    else:
        tx = _side_tensor(ct, True, v.gx, n)
        ty = _side_tensor(ct, False, v.ky, n)
        signs = (1,) * n
    inv = ct.inverse_class
    sizes = ct.class_sizes
    reps = ct.group.conjugacy.class_rep
    out, dropped = [], []
    for cls in itertools.product(range(ct.num_irreps), repeat=n):
        label = tuple(int(reps[c]) for c in cls)
        rows = int(tx[cls])
        cols = int(ty[tuple(c if s == 1 else int(inv[c]) for c, s in zip(cls, signs))])
        if rows == 0 or cols == 0:
            dropped.append(label)
            continue
        count = math.prod(int(sizes[c]) for c in cls)
        out.append(
            Block(
                label,
                SymbolicDim(count, lat.vb - lat.num_base_points),
                SymbolicDim(rows, lat.vx),
                SymbolicDim(cols, lat.vy),
            )
        )
    return BlockStructure(spec, ct.order, sorted(out, key=lambda b: b.label), sorted(dropped))


def _torus_slab_blocks(spec: BipartitionSpec, ct: CharacterTable) -> BlockStructure:
    v = spec.variant
    lat = spec.lattice
    g = ct.group
    m = v.n - v.k
    geo = lat.vb - lat.num_base_points
    if m == 0:
        tuples = np.zeros((1, 0), dtype=np.int64)
        orbit_ids = np.zeros(1, dtype=np.int64)
    else:
        tuples = commuting_tuples(g, m, want_list=True).tuples
        orbit_ids = conjugation_orbits(g, tuples)
    members: dict[int, list[int]] = defaultdict(list)
    for i, o in enumerate(orbit_ids):
        members[int(o)].append(i)
    out = []
    for rows_idx in members.values():
        rep = tuple(int(x) for x in tuples[rows_idx[0]])
        size = len(rows_idx)
        cent = centralizer_of_tuple(g, rep) if m else tuple(range(g.order))
        if v.k == 1:
            c = len(cent)
            out.append(Block(rep, SymbolicDim(size * size, geo), SymbolicDim(c, lat.vx), SymbolicDim(c, lat.vy)))
        else:
            cols = commuting_tuples(g, v.k, within=cent).count
            out.append(Block(rep, SymbolicDim(size, geo), SymbolicDim(1, lat.vx), SymbolicDim(cols, lat.vy)))
    return BlockStructure(spec, ct.order, sorted(out, key=lambda b: b.label))


def _lens_blocks(spec: BipartitionSpec, ct: CharacterTable) -> BlockStructure:
    v = spec.variant
    lat = spec.lattice
    g = ct.group
    conj = g.conjugacy
    if v.q == 0:
        image = np.arange(g.order)
    else:
        image = np.flatnonzero(g.power_map(v.q) == 0)
    counts = Counter(int(conj.class_of[x]) for x in image)
    geo = lat.vb - lat.num_base_points
    out = [
        Block((int(conj.class_rep[c]),), SymbolicDim(cnt, geo), SymbolicDim(1, lat.vx), SymbolicDim(1, lat.vy))
        for c, cnt in sorted(counts.items())
    ]
    return BlockStructure(spec, ct.order, out)


# ---------------------------------------------------------------- generic path


def _boundary_histogram(g: FiniteGroup, pres, threads: int) -> Counter:
    homs = enumerate_homs(g, pres, threads=threads)
    if homs.shape[0] == 0:
        return Counter()
    vals = np.stack([np.asarray(evaluate_word(g, w, homs)) for w in pres.boundary_words], axis=1)
    if vals.ndim == 1:
        vals = vals[:, None]
    return Counter(tuple(int(x) for x in row) for row in vals)


def blocks_generic(
    spec: BipartitionSpec | Variant, group: FiniteGroup, *, threads: int = 1
) -> BlockStructure:
    """Fiber-product computation of W's blocks from explicit presentations.

    Works for any spec with a presentation rewrite (surfaces and lenses) and for
    ``GenericPresentation``. Element-level labels are merged when they share a
    tuple of conjugacy classes and the same block shape.
    """
    spec, _ = validate(spec)
    lat = spec.lattice
    gp = generic_from_spec(spec)
    hx = _boundary_histogram(group, gp.pres_x, threads)
    hy = _boundary_histogram(group, gp.pres_y, threads)
    conj = group.conjugacy
    merged: Counter = Counter()
    for key, rows in hx.items():
        cols = hy.get(key, 0)
        if cols:
            label = tuple(int(conj.class_rep[conj.class_of[x]]) for x in key)
            merged[(label, rows, cols)] += 1
    geo = lat.vb - lat.num_base_points
    out = [
        Block(label, SymbolicDim(cnt, geo), SymbolicDim(rows, lat.vx), SymbolicDim(cols, lat.vy))
        for (label, rows, cols), cnt in sorted(merged.items())
    ]
    return BlockStructure(spec, group.order, out)


# ---------------------------------------------------------------- spectra


@dataclass(frozen=True)
class Spectrum:
    """Normalized singular values grouped by block, with degeneracies."""

    values: list[np.ndarray]
    degeneracy: list[int]
    entropy: float


def spectrum_from_amplitudes(bs: BlockStructure, matrices: Sequence[np.ndarray]) -> Spectrum:
    """Entanglement spectrum from one topological amplitude matrix per block.

    ``matrices[i]`` must have shape (rows.coeff, cols.coeff) of block i. Each
    block represents ``mult * |G|**(mult.gpow + rows.gpow + cols.gpow)``
    identical copies once the geometric factor (uniform over pure-gauge
    degrees of freedom) is included; amplitudes are shared among the copies.
    """
    if len(matrices) != len(bs.blocks):
        raise ValueError(f"expected {len(bs.blocks)} matrices, got {len(matrices)}")
    order = bs.group_order
    svals, degs = [], []
    for b, mat in zip(bs.blocks, matrices):
        mat = np.atleast_2d(np.asarray(mat, dtype=complex))
        if mat.shape != (b.rows.coeff, b.cols.coeff):
            raise ValueError(f"block {b.label}: shape {mat.shape} != {(b.rows.coeff, b.cols.coeff)}")
        svals.append(np.linalg.svd(mat, compute_uv=False))
        degs.append(b.mult.coeff)
    # geometric copies: rows and cols factors spread amplitude uniformly and do
    # not change the Schmidt values; the boundary replication multiplies them.
    geo = [order ** b.mult.gpow for b in bs.blocks]
    weight = sum(d * gcount * float(np.sum(s**2)) for s, d, gcount in zip(svals, degs, geo))
    if weight <= 0:
        raise ValueError("all amplitudes vanish")
    entropy = 0.0
    norm_vals = []
    for s, d, gcount in zip(svals, degs, geo):
        p = s**2 / weight
        norm_vals.append(np.sqrt(p))
        nz = p[p > 0]
        entropy -= d * gcount * float(np.sum(nz * np.log(nz)))
    return Spectrum(norm_vals, [d * gc for d, gc in zip(degs, geo)], entropy)
