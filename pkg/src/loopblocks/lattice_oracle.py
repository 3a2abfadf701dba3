"""Brute-force validation on explicit cell complexes.

Small lattices are built by polygon identification. Flat configurations are
generated from a spanning-tree presentation: every flat configuration is a
unique gauge transform (trivial at the root vertex) of a configuration that is
the identity on tree edges. Gauge transformations act as g_e -> a_t g_e a_s^-1.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._config import HOM_CAP, LIST_CAP, CapExceeded, cap
from .block_engine import BlockStructure, blocks
from .group_core import FiniteGroup, GroupPresentation, conjugation_orbits, enumerate_homs
from .rep_theory import CharacterTable
from .topology import BipartitionSpec, LatticeCounts, Mixed, NonorientPair, OrientPair, Variant, validate

__all__ = [
    "BUILTIN_LATTICES",
    "EmpiricalBlocks",
    "Lattice",
    "brute_force_flat_count",
    "builtin_lattice",
    "compare_blocks",
    "empirical_blocks",
    "empirical_gauge_dof",
    "flat_configurations",
    "gauge_transform",
    "holonomy",
    "is_flat",
    "lattice_presentation",
    "parse_lattice_name",
    "predicted_shapes",
]


@dataclass(frozen=True)
class Lattice:
    """A 2-complex with an edge bipartition.

    ``plaquettes`` are closed walks given as (edge, sign) pairs; sign +1 walks
    an edge from source to target. ``x_edges`` lists the edges of X; all other
    edges belong to Y. ``variant`` is the bipartition the cut realizes.
    """

    name: str
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    plaquettes: tuple[tuple[tuple[int, int], ...], ...]
    x_edges: frozenset[int] = frozenset()
    base_points: tuple[int, ...] = (0,)
    variant: Variant | None = None
    surface: tuple[bool, int] | None = None

    def __post_init__(self) -> None:
        for p in self.plaquettes:
            walk = [(self.edges[e] if s == 1 else self.edges[e][::-1]) for e, s in p]
            for (a, b), (c, _) in zip(walk, walk[1:] + walk[:1]):
                if b != c:
                    raise ValueError(f"plaquette {p} is not a closed walk")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def incident(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for i, (s, t) in enumerate(self.edges):
            out[s].add(i)
            out[t].add(i)
        return out

    def vertex_classes(self) -> tuple[list[int], list[int], list[int]]:
        """(V_X, V_Y, V_boundary): vertices touching only X, only Y, or both."""
        vx, vy, vb = [], [], []
        for v, inc in enumerate(self.incident()):
            in_x = any(e in self.x_edges for e in inc)
            in_y = any(e not in self.x_edges for e in inc)
            (vb if in_x and in_y else vx if in_x else vy).append(v)
        return vx, vy, vb

    def counts(self) -> LatticeCounts:
        vx, vy, vb = self.vertex_classes()
        return LatticeCounts(len(vx), len(vy), len(vb), len(self.base_points))

    def spec(self) -> BipartitionSpec:
        if self.variant is None:
            raise ValueError(f"lattice {self.name} carries no bipartition")
        return validate(BipartitionSpec(self.variant, self.counts()))[0]


# ---------------------------------------------------------------- builders


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, a: int) -> tuple[int, int]:
        par = 0
        root = a
        while self.parent[root] != root:
            par ^= self.parity[root]
            root = self.parent[root]
        return root, par

    def union(self, a: int, b: int, flip: int = 0) -> None:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != flip:
                raise ValueError("inconsistent orientation identification")
            return
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ flip


def _square_complex(m: int, kind: str) -> tuple[int, list, list, dict, dict]:
    """Square grid on [0,m]^2 with side identifications; returns lattice data and grid maps."""
    pts = {(x, y): i for i, (x, y) in enumerate(itertools.product(range(m + 1), repeat=2))}
    grid_edges = []
    for y in range(m + 1):
        for x in range(m):
            grid_edges.append(((x, y), (x + 1, y)))
    for x in range(m + 1):
        for y in range(m):
            grid_edges.append(((x, y), (x, y + 1)))
    eidx = {e: i for i, e in enumerate(grid_edges)}

    def h(x, y):
        return eidx[((x, y), (x + 1, y))]

    def v(x, y):
        return eidx[((x, y), (x, y + 1))]

    dsu = _DSU(len(grid_edges))
    for x in range(m):
        if kind == "rp2":
            dsu.union(h(x, 0), h(m - x - 1, m), 1)
        else:
            dsu.union(h(x, 0), h(x, m), 0)
    for y in range(m):
        if kind == "torus":
            dsu.union(v(0, y), v(m, y), 0)
        else:
            dsu.union(v(0, y), v(m, m - y - 1), 1)
    vdsu = _DSU(len(pts))
    for i, (a, b) in enumerate(grid_edges):
        root, par = dsu.find(i)
        ra, rb = grid_edges[root]
        if par == 0:
            vdsu.union(pts[a], pts[ra])
            vdsu.union(pts[b], pts[rb])
        else:
            vdsu.union(pts[a], pts[rb])
            vdsu.union(pts[b], pts[ra])
    vroots = sorted({vdsu.find(i)[0] for i in range(len(pts))})
    vmap = {r: k for k, r in enumerate(vroots)}
    point_vertex = {p: vmap[vdsu.find(i)[0]] for p, i in pts.items()}
    eroots = sorted({dsu.find(i)[0] for i in range(len(grid_edges))})
    emap = {r: k for k, r in enumerate(eroots)}
    edges = []
    for r in eroots:
        a, b = grid_edges[r]
        edges.append((point_vertex[a], point_vertex[b]))
    grid_to_edge = {}
    for i in range(len(grid_edges)):
        root, par = dsu.find(i)
        grid_to_edge[i] = (emap[root], -1 if par else 1)

    plaquettes = []
    for x in range(m):
        for y in range(m):
            walk = [(h(x, y), 1), (v(x + 1, y), 1), (h(x, y + 1), -1), (v(x, y), -1)]
            plaquettes.append(tuple((grid_to_edge[e][0], s * grid_to_edge[e][1]) for e, s in walk))
    lookup = {"h": lambda x, y: grid_to_edge[h(x, y)][0], "v": lambda x, y: grid_to_edge[v(x, y)][0]}
    return len(vroots), edges, plaquettes, lookup, point_vertex


_CUTS = {
    "torus": ("tube", "disk"),
    "klein": ("tube", "mobius", "disk"),
    "rp2": ("disk",),
}


def _square_lattice(kind: str, m: int, cut: str) -> Lattice:
    if m < 2:
        raise ValueError("grid size must be at least 2")
    nv, edges, plaqs, lk, pv = _square_complex(m, kind)
    h, v = lk["h"], lk["v"]
    w = m // 2
    if cut == "tube":
        xe = {v(x, y) for x in range(w) for y in range(m)} | {h(x, y) for x in range(w) for y in range(m)}
        base = (pv[(0, 0)], pv[(w, 0)])
        variant = OrientPair(0, 0, 2, (1, 1) if kind == "torus" else (1, -1))
    elif cut == "mobius":
        xe = {h(x, 0) for x in range(m)} | {v(x, 0) for x in range(m)}
        base = (pv[(0, 1)],)
        variant = NonorientPair(1, 1, 1)
    elif cut == "disk":
        xe = {h(0, 0)}
        base = (pv[(0, 0)],)
        variant = {"torus": OrientPair(0, 1, 1), "klein": Mixed(0, 2, 1), "rp2": Mixed(0, 1, 1)}[kind]
    elif cut == "none":
        xe, base, variant = set(), (0,), None
    else:
        raise ValueError(f"cut {cut!r} is not available on {kind}")
    surface = {"torus": (True, 1), "klein": (False, 2), "rp2": (False, 1)}[kind]
    return Lattice(f"{kind}:{m}:{cut}", nv, tuple(edges), tuple(plaqs), frozenset(xe), base, variant, surface)


def _polygon_lattice(name: str) -> Lattice:
    if name == "sigma2-octagon":
        # a b a^-1 b^-1 c d c^-1 d^-1 on a single vertex
        word = ((0, 1), (1, 1), (0, -1), (1, -1), (2, 1), (3, 1), (2, -1), (3, -1))
        return Lattice(name, 1, ((0, 0),) * 4, (word,), surface=(True, 2))
    if name == "rp2-bigon":
        return Lattice(name, 1, ((0, 0),), (((0, 1), (0, 1)),), surface=(False, 1))
    if name == "sphere":
        # tetrahedron, X is a single edge (a disk cut)
        edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        faces = (
            ((0, 1), (3, 1), (1, -1)),
            ((0, 1), (4, 1), (2, -1)),
            ((1, 1), (5, 1), (2, -1)),
            ((3, 1), (5, 1), (4, -1)),
        )
        return Lattice(name, 4, edges, faces, frozenset({0}), (0,), OrientPair(0, 0, 1), (True, 0))
    raise ValueError(f"unknown lattice {name!r}")


BUILTIN_LATTICES = ("torus", "klein", "rp2", "sigma2-octagon", "rp2-bigon", "sphere")


def builtin_lattice(name: str, size: int = 2, cut: str | None = None) -> Lattice:
    """Named lattice: torus, klein and rp2 are m x m grids; the rest are minimal complexes.

    Grid cuts: torus ``tube`` (default) or ``disk``; klein ``tube`` (default),
    ``mobius`` or ``disk``; rp2 ``disk``.
    """
    if name in _CUTS:
        if cut not in (None, "none") + _CUTS[name]:
            raise ValueError(f"cut {cut!r} is not available on {name}")
        return _square_lattice(name, size, cut or _CUTS[name][0])
    if cut not in (None, "none", "disk"):
        raise ValueError(f"lattice {name!r} has no cut {cut!r}")
    return _polygon_lattice(name)


def parse_lattice_name(text: str) -> Lattice:
    """``torus:2``, ``klein:3:mobius``, ``rp2-bigon`` and similar."""
    parts = text.split(":")
    name = parts[0]
    size = int(parts[1]) if len(parts) > 1 and parts[1] else 2
    cut = parts[2] if len(parts) > 2 else None
    return builtin_lattice(name, size, cut)


# ---------------------------------------------------------------- configurations


def holonomy(group: FiniteGroup, cfg: np.ndarray, walk) -> np.ndarray | int:
    """Holonomy g_{e_k}^{s_k} ... g_{e_1}^{s_1} of a walk; ``cfg`` may be 1-D or 2-D."""
    cfg = np.asarray(cfg)
    out = np.zeros(cfg.shape[:-1], dtype=np.int64)
    for e, s in walk:
        val = cfg[..., e] if s == 1 else group.inverse[cfg[..., e]]
        out = group.cayley[val, out]
    return out if out.ndim else int(out)


def is_flat(lat: Lattice, group: FiniteGroup, cfg) -> bool | np.ndarray:
    """Every plaquette holonomy is the identity (vectorized over leading axes)."""
    cfg = np.asarray(cfg)
    ok = np.ones(cfg.shape[:-1], dtype=bool)
    for p in lat.plaquettes:
        ok &= np.asarray(holonomy(group, cfg, p)) == 0
    return ok if ok.ndim else bool(ok)


def gauge_transform(
    lat: Lattice, group: FiniteGroup, cfg, field_values, *, frozen: tuple[int, ...] | None = None
) -> np.ndarray:
    """Apply g_e -> a_t g_e a_s^-1; ``frozen`` vertices must carry the identity."""
    a = np.asarray(field_values)
    frozen = lat.base_points if frozen is None else frozen
    if any(a[..., v].any() for v in frozen):
        raise ValueError("gauge field must be trivial on frozen vertices")
    cfg = np.asarray(cfg)
    src = np.array([s for s, _ in lat.edges])
    tgt = np.array([t for _, t in lat.edges])
    cay, inv = group.cayley, group.inverse
    return cay[cay[a[..., tgt], cfg], inv[a[..., src]]]


def _spanning_tree(lat: Lattice, root: int = 0) -> tuple[set[int], dict[int, tuple[int, int]]]:
    """Tree edges and, for each vertex, its (parent edge, sign toward the vertex)."""
    adj = [[] for _ in range(lat.num_vertices)]
    for i, (s, t) in enumerate(lat.edges):
        adj[s].append((i, t, 1))
        adj[t].append((i, s, -1))
    seen = {root}
    tree = set()
    parent = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e, w, sgn in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                parent[w] = (e, sgn)
                queue.append(w)
    if len(seen) != lat.num_vertices:
        raise ValueError("lattice is not connected")
    return tree, parent


def lattice_presentation(lat: Lattice, root: int = 0) -> tuple[GroupPresentation, list[int]]:
    """pi_1(K, root): generators are non-tree edges, relators are plaquettes."""
    tree, _ = _spanning_tree(lat, root)
    gens = [e for e in range(lat.num_edges) if e not in tree]
    gidx = {e: i + 1 for i, e in enumerate(gens)}
    rels = []
    for p in lat.plaquettes:
        word = tuple(s * gidx[e] for e, s in reversed(p) if e in gidx)
        if word:
            rels.append(word)
    return GroupPresentation(len(gens), tuple(rels), None, tuple(f"e{e}" for e in gens)), gens


def _all_fields(group: FiniteGroup, nv: int, root: int) -> np.ndarray:
    free = [v for v in range(nv) if v != root]
    out = np.zeros((group.order ** len(free), nv), dtype=np.int64)
    if free:
        grid = np.indices((group.order,) * len(free)).reshape(len(free), -1).T
        out[:, free] = grid
    return out


def flat_configurations(lat: Lattice, group: FiniteGroup, *, root: int = 0) -> np.ndarray:
    """Every flat configuration, built as gauge orbit representatives times fields."""
    pres, gens = lattice_presentation(lat, root)
    homs = enumerate_homs(group, pres)
    total = homs.shape[0] * group.order ** (lat.num_vertices - 1)
    limit = cap(LIST_CAP)
    if total > limit:
        raise CapExceeded(f"{total} flat configurations exceed the cap {limit}")
    fields = _all_fields(group, lat.num_vertices, root)
    out = np.empty((homs.shape[0], fields.shape[0], lat.num_edges), dtype=np.int64)
    base = np.zeros((homs.shape[0], lat.num_edges), dtype=np.int64)
    base[:, gens] = homs
    src = np.array([s for s, _ in lat.edges])
    tgt = np.array([t for _, t in lat.edges])
    cay, inv = group.cayley, group.inverse
    for i in range(homs.shape[0]):
        out[i] = cay[cay[fields[:, tgt], base[i][None, :]], inv[fields[:, src]]]
    return out.reshape(-1, lat.num_edges)


def brute_force_flat_count(lat: Lattice, group: FiniteGroup, *, chunk: int = 1 << 18) -> int:
    """Count flat configurations by filtering all |G|^|E| assignments (small cases only)."""
    total = group.order**lat.num_edges
    limit = cap(HOM_CAP)
    if total > limit:
        raise CapExceeded(f"{total} assignments exceed the cap {limit}")
    radix = group.order ** np.arange(lat.num_edges, dtype=np.int64)
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cfg = (idx[:, None] // radix[None, :]) % group.order
        count += int(np.count_nonzero(is_flat(lat, group, cfg)))
    return count


# ---------------------------------------------------------------- blocks


@dataclass
class EmpiricalBlocks:
    """Connected components of the X/Y compatibility graph of flat configurations."""

    shapes: Counter
    rectangular: bool
    num_configurations: int
    counts: LatticeCounts
    details: list[tuple[int, int, int]] = field(default_factory=list)


def empirical_blocks(lat: Lattice, group: FiniteGroup) -> EmpiricalBlocks:
    cfgs = flat_configurations(lat, group)
    xe = sorted(lat.x_edges)
    ye = [e for e in range(lat.num_edges) if e not in lat.x_edges]
    _, xi = np.unique(cfgs[:, xe], axis=0, return_inverse=True)
    _, yi = np.unique(cfgs[:, ye], axis=0, return_inverse=True)
    xi, yi = xi.reshape(-1), yi.reshape(-1)
    nx, ny = int(xi.max()) + 1, int(yi.max()) + 1
    graph = coo_matrix((np.ones(xi.size), (xi, yi + nx)), shape=(nx + ny, nx + ny))
    _, comp = connected_components(graph, directed=False)
    rows = Counter(comp[:nx].tolist())
    cols = Counter(comp[nx:].tolist())
    nnz = Counter(comp[xi].tolist())
    shapes: Counter = Counter()
    rect = True
    details = []
    for c in rows:
        r, k = rows[c], cols[c]
        shapes[(r, k)] += 1
        rect &= nnz[c] == r * k
        details.append((r, k, nnz[c]))
    return EmpiricalBlocks(shapes, rect, int(cfgs.shape[0]), lat.counts(), sorted(details))


def predicted_shapes(bs: BlockStructure) -> Counter:
    """Full block shapes (geometric factors included) from a BlockStructure."""
    order = bs.group_order
    out: Counter = Counter()
    for b in bs.blocks:
        out[(b.rows.value(order), b.cols.value(order))] += b.mult.value(order)
    return out


def compare_blocks(lat: Lattice, ct: CharacterTable) -> tuple[bool, Counter, Counter]:
    """Empirical versus predicted block shapes; also requires every block to be full."""
    emp = empirical_blocks(lat, ct.group)
    pred = predicted_shapes(blocks(lat.spec(), ct))
    return emp.rectangular and emp.shapes == pred, emp.shapes, pred


def empirical_gauge_dof(lat: Lattice, group: FiniteGroup) -> int:
    """Gauge orbits of flat configurations: conjugation orbits of Hom(pi_1(K), G)."""
    pres, _ = lattice_presentation(lat)
    homs = enumerate_homs(group, pres)
    if homs.shape[1] == 0:
        return 1 if homs.shape[0] else 0
    return int(np.unique(conjugation_orbits(group, homs)).size)
