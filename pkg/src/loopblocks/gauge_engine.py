"""Gauge-invariant refinement of the block structure.

The gauge group G^{|A|} acts on boundary labels phi by conjugating the
holonomies seen at each base point. Inside the block of phi, the stabilizer
G_phi acts on the preimages r_X^{-1}(phi) and r_Y^{-1}(phi) by permutations;
their isotypic multiplicities x and y give the anyonic sectors of W.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .block_engine import blocks
from .double_mtc import APPENDIX, centralizer_table, s_column, s_matrix
from .group_core import FiniteGroup, conjugation_orbits, enumerate_homs
from . import rep_theory as _rt
from .rep_theory import CharacterTable, RoundingError, SubgroupTable, round_int, subgroup_table
from .topology import (
    BipartitionSpec,
    Mixed,
    NonorientPair,
    OrientPair,
    SideGroupoid,
    SpecError,
    TorusSlab,
    Variant,
    side_groupoids,
    validate,
)

__all__ = [
    "anyon_sector",
    "burnside_orbit_count",
    "check_two_paths",
    "entropy_general",
    "gauge_blocks",
    "GaugeBlockStructure",
    "gsd",
    "gsd_from_smatrix",
    "multiplicities",
    "multiplicity_smatrix",
    "multiplicity_smatrix_array",
    "Orbit",
    "PathDisagreement",
    "perm_trace",
    "perm_trace_closed_form",
    "Sector",
    "sector_arrays",
    "SectorArrays",
    "side_traces",
    "SideTraces",
    "stabilizer_and_orbit",
    "tee_general",
    "tee_minimal",
    "tee_value",
]


class PathDisagreement(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# ---------------------------------------------------------------- stabilizers


@dataclass(frozen=True)
class Stabilizer:
    """G_phi as a product of per-base-point centralizers, and the orbit size |[phi]|."""

    factors: tuple[tuple[int, ...], ...]
    orbit_size: int

    @property
    def order(self) -> int:
        return math.prod(len(f) for f in self.factors)


def _per_base(side: SideGroupoid, values: Sequence[int]) -> list[tuple[int, ...]]:
    """Boundary values grouped by base point."""
    pos = {gen: i for i, gen in enumerate(side.boundary_generators)}
    return [tuple(int(values[pos[gen]]) for gen in grp) for grp in side.boundary]


def stabilizer_and_orbit(spec: BipartitionSpec | Variant, group: FiniteGroup, phi: Sequence[int]) -> Stabilizer:
    """G_phi and |[phi]| for a boundary label given as X-side boundary values.

    Surface specs take phi = (c_1, ..., c_n); TorusSlab(n, 1) takes the n-1
    holonomies at the first base point followed by the n-1 at the second.
    """
    side, _, _ = side_groupoids(spec)
    phi = [int(x) for x in phi]
    if len(phi) != len(side.boundary_generators) or any(not 0 <= x < group.order for x in phi):
        raise SpecError("phi is outside the boundary label space")
    factors = tuple(group.centralizer(vals) for vals in _per_base(side, phi))
    orbit = math.prod(group.order // len(f) for f in factors)
    return Stabilizer(factors, orbit)


# ---------------------------------------------------------------- fixed points


def _fixed_values(side: SideGroupoid, phi: Sequence[int], signs: Sequence[int], group: FiniteGroup) -> dict[int, int]:
    out = {}
    for gen, val, s in zip(side.boundary_generators, phi, signs):
        out[gen] = int(val) if s == 1 else int(group.inverse[int(val)])
    return out


def _tree(side: SideGroupoid) -> list[tuple[int, int, int]]:
    """Spanning tree (generator, src, tgt) reaching every base point from base 0."""
    reached = {0}
    edges = []
    changed = True
    while changed:
        changed = False
        for i, (s, t) in enumerate(side.arrows):
            if s in reached and t not in reached:
                reached.add(t)
                edges.append((i, s, t))
                changed = True
    if len(reached) != side.num_base_points:
        raise SpecError("side groupoid is not connected")
    return edges


@dataclass
class SideTraces:
    """Fixed-point counts of the stabilizer acting on one side's preimage.

    ``traces`` maps a stabilizer element (one group element per base point) to
    the number of preimage elements it fixes; absent keys have trace 0.
    """

    preimage_size: int
    traces: dict[tuple[int, ...], int]


def side_traces(
    group: FiniteGroup,
    side: SideGroupoid,
    phi: Sequence[int],
    signs: Sequence[int] | None = None,
    *,
    threads: int = 1,
) -> SideTraces:
    """Histogram of Tr D_phi(g) over g in G_phi via fixed-point enumeration.

    Every gauge transformation fixing a solution is determined by its value at
    base point 0, propagated along tree arrows as g_t = h g_s h^-1; it is kept
    if it fixes every generator.
    """
    signs = tuple(signs) if signs is not None else (1,) * len(phi)
    fixed = _fixed_values(side, phi, signs, group)
    sols = enumerate_homs(group, side.presentation, fixed=fixed, threads=threads)
    n_sol = sols.shape[0]
    if n_sol == 0:
        return SideTraces(0, {})
    base0 = _per_base(side, [fixed[gen] for gen in side.boundary_generators])[0]
    cand = np.array(group.centralizer(base0), dtype=np.int64)
    nb = side.num_base_points
    conj = group.conjugation_table
    gauge = np.empty((nb, n_sol, cand.size), dtype=np.int64)
    gauge[0] = cand[None, :]
    for gen, s, t in _tree(side):
        h = sols[:, gen][:, None]
        gauge[t] = conj[h, gauge[s]]
    ok = np.ones((n_sol, cand.size), dtype=bool)
    cay, inv = group.cayley, group.inverse
    for gen, (s, t) in enumerate(side.arrows):
        h = sols[:, gen][:, None]
        moved = cay[cay[gauge[t], h], inv[gauge[s]]]
        ok &= moved == h
    keys = np.zeros((n_sol, cand.size), dtype=np.int64)
    for b in range(nb - 1, -1, -1):
        keys = keys * group.order + gauge[b]
    uniq, counts = np.unique(keys[ok], return_counts=True)
    traces = {}
    for key, cnt in zip(uniq.tolist(), counts.tolist()):
        tup = []
        for _ in range(nb):
            tup.append(key % group.order)
            key //= group.order
        traces[tuple(tup)] = int(cnt)
    return SideTraces(n_sol, traces)


def _side_for(spec: BipartitionSpec, which: str) -> tuple[SideGroupoid, tuple[int, ...]]:
    x, y, signs = side_groupoids(spec)
    if which.upper() == "X":
        return x, (1,) * len(signs)
    if which.upper() == "Y":
        return y, signs
    raise ValueError("side must be 'X' or 'Y'")


def _side_kind(spec: BipartitionSpec, which: str) -> tuple[bool, int]:
    v = spec.variant
    if isinstance(v, OrientPair):
        return True, v.gx if which.upper() == "X" else v.gy
    if isinstance(v, NonorientPair):
        return False, v.kx if which.upper() == "X" else v.ky
    if isinstance(v, Mixed):
        return (True, v.gx) if which.upper() == "X" else (False, v.ky)
    raise SpecError("closed-form traces exist only for surface sides")


def perm_trace_closed_form(
    ct: CharacterTable,
    orientable: bool,
    genus: int,
    boundary: Sequence[int],
    g_phi: Sequence[int],
) -> int:
    """Tr D_phi(g) on a surface side from centralizer characters.

    With g_j = h_j g h_j^-1 for a common class representative g, the trace is
    sum over beta in Rep(C_g) of (iota_beta^k) (|C_g|/d_beta)^e prod_j
    chi_beta(h_j^-1 c_j h_j), with e = 2 gamma + n - 2 (orientable) or k + n - 2.
    It vanishes unless all g_j are conjugate and each g_j commutes with c_j.
    """
    grp = ct.group
    conjd = grp.conjugacy
    n = len(boundary)
    cls = {int(conjd.class_of[x]) for x in g_phi}
    if len(cls) != 1:
        return 0
    if any(not grp.commutes[int(c), int(x)] for c, x in zip(boundary, g_phi)):
        return 0
    g = int(conjd.class_rep[cls.pop()])
    tg = centralizer_table(grp, g)
    ctab = grp.conjugation_table
    args = []
    for c, gj in zip(boundary, g_phi):
        h = int(np.flatnonzero(ctab[:, g] == int(gj))[0])
        args.append(int(ctab[grp.inverse[h], int(c)]))
    exponent = (2 * genus + n - 2) if orientable else (genus + n - 2)
    total = 0j
    for b in range(tg.num_irreps):
        w = (tg.order / float(tg.dims[b])) ** exponent
        if not orientable:
            w *= tg.iota[b] ** genus
        total += w * np.prod([tg.on_parent[b, a] for a in args])
    out = round_int(total, "closed-form trace")
    if out < 0:
        raise RoundingError("negative trace")
    return out


def perm_trace(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    side: str,
    phi: Sequence[int],
    g_phi: Sequence[int],
) -> int:
    """Number of preimage elements on ``side`` fixed by g_phi in G_phi.

    Computed by direct enumeration and, for surface sides, by the closed
    character formula; disagreement raises PathDisagreement.
    """
    spec, _ = validate(spec)
    grp = ct.group
    sgd, signs = _side_for(spec, side)
    stab = stabilizer_and_orbit(spec, grp, phi)
    g_phi = tuple(int(x) for x in g_phi)
    if len(g_phi) != len(stab.factors) or any(x not in f for x, f in zip(g_phi, stab.factors)):
        raise SpecError("g_phi is not in the stabilizer of phi")
    fixed = _fixed_values(sgd, phi, signs, grp)
    sols = enumerate_homs(grp, sgd.presentation, fixed=fixed)
    cay, inv = grp.cayley, grp.inverse
    ok = np.ones(sols.shape[0], dtype=bool)
    for gen, (s, t) in enumerate(sgd.arrows):
        h = sols[:, gen]
        ok &= cay[cay[g_phi[t], h], inv[g_phi[s]]] == h
    direct = int(np.count_nonzero(ok))
    if isinstance(spec.variant, (OrientPair, NonorientPair, Mixed)):
        orientable, genus = _side_kind(spec, side)
        boundary = [fixed[gen] for gen in sgd.boundary_generators]
        closed = perm_trace_closed_form(ct, orientable, genus, boundary, g_phi)
        if closed != direct:
            raise PathDisagreement(f"trace: enumeration {direct} != closed form {closed}")
    return direct


# ---------------------------------------------------------------- multiplicities


@dataclass(frozen=True)
class Sector:
    alpha: tuple[int, ...]
    d: int
    x: int
    y: int

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "d": self.d, "x": self.x, "y": self.y}


@dataclass(frozen=True)
class Orbit:
    label: tuple[int, ...]
    orbit_size: int
    stabilizer_order: int
    sectors: tuple[Sector, ...]

    def to_json(self, group: FiniteGroup | None = None) -> dict:
        data = {
            "label": list(self.label),
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
            "sectors": [s.to_json() for s in self.sectors],
        }
        if group is not None and group.element_names is not None:
            data["label_names"] = [group.element_names[x] for x in self.label]
        return data


@dataclass
class GaugeBlockStructure:
    spec: BipartitionSpec
    group_order: int
    orbits: list[Orbit]
    num_base_points: int
    dropped_sectors: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def sum_xy(self) -> int:
        return sum(s.x * s.y for o in self.orbits for s in o.sectors)

    def find(self, label: Sequence[int], alpha: Sequence[int]) -> tuple[Orbit, Sector]:
        label, alpha = tuple(label), tuple(alpha)
        for o in self.orbits:
            if o.label == label:
                for s in o.sectors:
                    if s.alpha == alpha:
                        return o, s
        raise KeyError(f"sector {alpha} of orbit {label} is absent")

    def to_json(self, group: FiniteGroup | None = None) -> dict:
        return {
            "base_points": self.num_base_points,
            "orbits": [o.to_json(group) for o in self.orbits],
            "sum_xy": self.sum_xy(),
        }


def _stabilizer_tables(group: FiniteGroup, factors: Sequence[Sequence[int]]) -> list[SubgroupTable]:
    return [subgroup_table(group, f) for f in factors]


def _round_array(vals: np.ndarray, what: str) -> np.ndarray:
    out = np.rint(vals.real).astype(np.int64)
    scale = np.maximum(1.0, np.abs(vals))
    if (np.abs(vals - out) > _rt.ROUND_TOL * scale).any():
        raise RoundingError(f"{what} is not an integer")
    if (out < 0).any():
        raise RoundingError(f"negative {what}")
    return out


def _sector_multiplicities(
    tables: Sequence[SubgroupTable], st: SideTraces, order: int
) -> np.ndarray:
    """x for every product irrep, as an integer array indexed by alpha tuples."""
    shape = tuple(t.num_irreps for t in tables)
    if not st.traces:
        return np.zeros(shape, dtype=np.int64)
    keys = list(st.traces)
    total = np.array([st.traces[k] for k in keys], dtype=complex)
    for b, t in enumerate(tables):
        chars = np.conj(t.on_parent[:, [k[b] for k in keys]]).T  # (K, irreps_b)
        total = total[..., None] * chars.reshape((len(keys),) + (1,) * b + (t.num_irreps,))
    return _round_array(total.sum(axis=0) / order, "multiplicity")


@dataclass(frozen=True)
class SectorArrays:
    """x, y and d over every product irrep alpha of G_phi (arrays indexed by alpha)."""

    x: np.ndarray
    y: np.ndarray
    d: np.ndarray

    def sectors(self) -> list[Sector]:
        keep = np.argwhere((self.x > 0) & (self.y > 0))
        return [Sector(tuple(int(a) for a in idx), int(self.d[tuple(idx)]), int(self.x[tuple(idx)]), int(self.y[tuple(idx)])) for idx in keep]

    def dropped(self) -> list[tuple[int, ...]]:
        one = (self.x > 0) ^ (self.y > 0)
        return [tuple(int(a) for a in idx) for idx in np.argwhere(one)]


def sector_arrays(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    phi: Sequence[int],
    *,
    threads: int = 1,
) -> SectorArrays:
    """Fixed-point multiplicities of both sides for the label phi, for every sector."""
    spec, _ = validate(spec)
    grp = ct.group
    xs, ys, signs = side_groupoids(spec)
    stab = stabilizer_and_orbit(spec, grp, phi)
    tables = _stabilizer_tables(grp, stab.factors)
    tx = side_traces(grp, xs, phi, None, threads=threads)
    ty = side_traces(grp, ys, phi, signs, threads=threads)
    d = np.ones((), dtype=np.int64)
    for t in tables:
        d = np.multiply.outer(d, t.dims.astype(np.int64))
    return SectorArrays(
        _sector_multiplicities(tables, tx, stab.order), _sector_multiplicities(tables, ty, stab.order), d
    )


def multiplicities(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    phi: Sequence[int],
    *,
    threads: int = 1,
) -> list[Sector]:
    """Sectors of the label phi with their multiplicities x and y (fixed-point path).

    Sectors with x = 0 or y = 0 are omitted.
    """
    return sector_arrays(spec, ct, phi, threads=threads).sectors()


def _smatrix_weights(ct: CharacterTable, orientable: bool, genus: int, n: int, convention: str) -> np.ndarray:
    sm = s_matrix(ct, convention=convention)
    vac = sm.entries[:, 0].real
    if orientable:
        return vac ** (2 - 2 * genus - n)
    return sm.iota**genus * vac ** (2 - genus - n)


def multiplicity_smatrix(
    ct: CharacterTable,
    orientable: bool,
    genus: int,
    anyons: Sequence[tuple[int, int]],
    *,
    convention: str = APPENDIX,
) -> int:
    """Sector multiplicity of a surface side from the modular S matrix.

    sum_x w_x prod_j S_{x,(c_j,alpha_j)} with w_x = S_{x,vac}^{2-2 gamma-n}
    (orientable) or iota_x^k S_{x,vac}^{2-k-n}. ``anyons`` lists (c_j, alpha_j)
    with c_j any element and alpha_j an irrep index of C_{c_j}.
    """
    total = _smatrix_weights(ct, orientable, genus, len(anyons), convention).astype(complex)
    for c, alpha in anyons:
        total = total * s_column(ct, int(c), int(alpha), convention=convention)
    out = round_int(total.sum(), "S-matrix multiplicity")
    if out < 0:
        raise RoundingError("negative S-matrix multiplicity")
    return out


def multiplicity_smatrix_array(
    ct: CharacterTable,
    orientable: bool,
    genus: int,
    elements: Sequence[int],
    *,
    convention: str = APPENDIX,
) -> np.ndarray:
    """multiplicity_smatrix for every irrep tuple over the boundary elements at once."""
    grp = ct.group
    w = _smatrix_weights(ct, orientable, genus, len(elements), convention).astype(complex)
    if not elements:
        return _round_array(np.array(w.sum()), "S-matrix multiplicity")
    cols = []
    for c in elements:
        n_irr = centralizer_table(grp, int(c)).num_irreps
        s_column(ct, int(c), 0, convention=convention)  # fills the cache
        cols.append(ct.__dict__["_s_columns"][(int(c), convention)][:, :n_irr])
    acc = w[:, None] * cols[0]
    for col in cols[1:-1]:
        acc = (acc[:, :, None] * col[:, None, :]).reshape(acc.shape[0], -1)
    if len(cols) > 1:
        acc = acc.T @ cols[-1]
    else:
        acc = acc.sum(axis=0)
    shape = tuple(col.shape[1] for col in cols)
    return _round_array(acc.reshape(shape), "S-matrix multiplicity")


def _surface_labels(spec: BipartitionSpec, ct: CharacterTable) -> list[tuple[int, ...]]:
    return [b.label for b in blocks(spec, ct).blocks]


def _slab_labels(spec: BipartitionSpec, group: FiniteGroup) -> list[tuple[int, ...]]:
    from .group_core import commuting_tuples

    m = spec.variant.n - 1
    tuples = commuting_tuples(group, m, want_list=True).tuples
    ids = conjugation_orbits(group, tuples)
    seen, out = set(), []
    for row, o in zip(tuples, ids):
        if int(o) not in seen:
            seen.add(int(o))
            rep = tuple(int(x) for x in row)
            out.append(rep + rep)
    return sorted(out)


def gauge_blocks(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    *,
    check_smatrix: bool = True,
    threads: int = 1,
) -> GaugeBlockStructure:
    """Gauge-invariant topological blocks for surface specs and TorusSlab(n, 1).

    With ``check_smatrix`` the fixed-point multiplicities of surface sides are
    compared against the S-matrix path and PathDisagreement is raised on any
    mismatch.
    """
    spec, _ = validate(spec)
    v = spec.variant
    grp = ct.group
    if isinstance(v, TorusSlab):
        if v.k != 1:
            raise SpecError("gauge refinement for TorusSlab is available for k = 1 only")
        labels = _slab_labels(spec, grp)
    else:
        labels = _surface_labels(spec, ct)
    side_y_signs = side_groupoids(spec)[2]
    orbits, dropped = [], []
    for label in labels:
        stab = stabilizer_and_orbit(spec, grp, label)
        arrays = sector_arrays(spec, ct, label, threads=threads)
        if check_smatrix and isinstance(v, (OrientPair, NonorientPair, Mixed)):
            check_two_paths(spec, ct, label, arrays, side_y_signs)
        dropped.extend((tuple(label), a) for a in arrays.dropped())
        orbits.append(Orbit(tuple(label), stab.orbit_size, stab.order, tuple(arrays.sectors())))
    return GaugeBlockStructure(spec, grp.order, orbits, spec.lattice.num_base_points, dropped)


def check_two_paths(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    label: Sequence[int],
    arrays: SectorArrays | None = None,
    signs: Sequence[int] | None = None,
) -> None:
    """Raise PathDisagreement unless fixed-point and S-matrix multiplicities agree on every sector."""
    spec, _ = validate(spec)
    grp = ct.group
    if arrays is None:
        arrays = sector_arrays(spec, ct, label)
    if signs is None:
        signs = side_groupoids(spec)[2]
    ox, gx = _side_kind(spec, "X")
    oy, gy = _side_kind(spec, "Y")
    ylabel = [c if s == 1 else int(grp.inverse[c]) for c, s in zip(label, signs)]
    sx = multiplicity_smatrix_array(ct, ox, gx, list(label))
    sy = multiplicity_smatrix_array(ct, oy, gy, ylabel)
    for side, fp, sm in (("X", arrays.x, sx), ("Y", arrays.y, sy)):
        if not np.array_equal(fp, sm):
            idx = tuple(int(a) for a in np.argwhere(fp != sm)[0])
            raise PathDisagreement(
                f"label {tuple(label)} side {side} sector {idx}: fixed points {fp[idx]} != S matrix {sm[idx]}"
            )


# ---------------------------------------------------------------- counting


def gsd(ct: CharacterTable, *, orientable: bool, genus: int) -> int:
    """Ground-state degeneracy of the quantum double on a closed surface, exactly.

    sum over classes [g] and beta in Rep(C_g) of (|C_g|/d_beta)^{2 gamma - 2},
    or iota_beta^k (|C_g|/d_beta)^{k - 2} for k crosscaps.
    """
    if genus < 0 or (not orientable and genus < 1):
        raise ValueError("need gamma >= 0 or k >= 1")
    grp = ct.group
    total = Fraction(0)
    for rep in grp.conjugacy.class_rep:
        tg = centralizer_table(grp, int(rep))
        for b in range(tg.num_irreps):
            ratio = Fraction(tg.order, int(tg.dims[b]))
            if orientable:
                total += ratio ** (2 * genus - 2)
            else:
                total += tg.iota[b] ** genus * ratio ** (genus - 2)
    if total.denominator != 1:
        raise RoundingError("ground-state degeneracy is not an integer")
    return int(total)


def gsd_from_smatrix(ct: CharacterTable, *, orientable: bool, genus: int, convention: str = APPENDIX) -> int:
    sm = s_matrix(ct, convention=convention)
    vac = sm.entries[:, 0].real
    if orientable:
        val = np.sum(vac ** (2 - 2 * genus))
    else:
        iota = sm.iota
        val = np.sum(iota**genus * vac ** (2 - genus))
    return round_int(val, "S-matrix degeneracy")


def burnside_orbit_count(
    spec: BipartitionSpec | Variant,
    ct: CharacterTable,
    *,
    threads: int = 1,
) -> int:
    """|X x_Z Y / G| as the sum over label orbits of (1/|G_phi|) sum_g TrX(g) TrY(g)."""
    spec, _ = validate(spec)
    grp = ct.group
    xs, ys, signs = side_groupoids(spec)
    if isinstance(spec.variant, TorusSlab):
        labels = _slab_labels(spec, grp)
    else:
        labels = _surface_labels(spec, ct)
    total = Fraction(0)
    for label in labels:
        stab = stabilizer_and_orbit(spec, grp, label)
        tx = side_traces(grp, xs, label, None, threads=threads).traces
        ty = side_traces(grp, ys, label, signs, threads=threads).traces
        total += Fraction(sum(cnt * ty.get(k, 0) for k, cnt in tx.items()), stab.order)
    if total.denominator != 1:
        raise RoundingError("Burnside count is not an integer")
    return int(total)


# ---------------------------------------------------------------- entropy


def tee_value(group_order: int, num_base_points: int, orbit_size: int, d: int) -> float:
    """|A| ln|G| - ln(|[phi]| d)."""
    return num_base_points * math.log(group_order) - math.log(orbit_size * d)


def tee_minimal(gbs: GaugeBlockStructure, label: Sequence[int], alpha: Sequence[int]) -> float:
    """TEE of a minimally entangled state in sector alpha of orbit [phi] (nats)."""
    orbit, sector = gbs.find(label, alpha)
    return tee_value(gbs.group_order, gbs.num_base_points, orbit.orbit_size, sector.d)


def _schmidt_correction(
    gbs: GaugeBlockStructure, amplitudes: Mapping[tuple[tuple[int, ...], tuple[int, ...]], Sequence[float]]
) -> float:
    """-sum |[phi]| d sum_i (p_i/N) ln(p_i/N) with p_i = |psi_i|^2."""
    weighted = []
    norm = 0.0
    for (label, alpha), vals in amplitudes.items():
        orbit, sector = gbs.find(label, alpha)
        vals = np.abs(np.asarray(vals, dtype=complex)) ** 2
        if vals.size > min(sector.x, sector.y):
            raise ValueError(f"sector {alpha} of {label} has rank at most {min(sector.x, sector.y)}")
        mult = orbit.orbit_size * sector.d
        weighted.append((mult, vals))
        norm += mult * float(vals.sum())
    if norm <= 0:
        raise ValueError("all amplitudes vanish")
    s = 0.0
    for mult, vals in weighted:
        p = vals[vals > 0] / norm
        s -= mult * float(np.sum(p * np.log(p)))
    return s


def entropy_general(
    gbs: GaugeBlockStructure,
    amplitudes: Mapping[tuple[tuple[int, ...], tuple[int, ...]], Sequence[float]],
    *,
    vb: int | None = None,
) -> float:
    """Entanglement entropy of a gauge-invariant state from sector singular values.

    ``amplitudes`` maps (orbit label, sector alpha) to the singular values of
    that sector's x-by-y matrix. The result is (|V_bd| - |A|) ln|G| plus the
    Schmidt entropy where each value carries degeneracy |[phi]| d.
    """
    vb = gbs.spec.lattice.vb if vb is None else vb
    geo = (vb - gbs.num_base_points) * math.log(gbs.group_order)
    return geo + _schmidt_correction(gbs, amplitudes)


def tee_general(
    gbs: GaugeBlockStructure,
    amplitudes: Mapping[tuple[tuple[int, ...], tuple[int, ...]], Sequence[float]],
) -> float:
    """|A| ln|G| minus the Schmidt entropy; equals tee_minimal for one nonzero amplitude."""
    return gbs.num_base_points * math.log(gbs.group_order) - _schmidt_correction(gbs, amplitudes)


def anyon_sector(gbs: GaugeBlockStructure, class_rep: int, irrep: int) -> tuple[Orbit, Sector]:
    """First sector whose leading label and irrep match the anyon (c, alpha)."""
    for o in gbs.orbits:
        if o.label[0] == class_rep:
            for s in o.sectors:
                if s.alpha[0] == irrep:
                    return o, s
    raise KeyError("anyon does not label any sector of this cut")

