"""Bipartition descriptors, their validation, and side presentations.

A bipartition describes a closed manifold M cut into two pieces X and Y along
a common boundary. Surface pieces are Sigma_{gamma,n} (orientable, genus gamma,
n boundary circles) or N_{k,n} (k crosscaps, n boundary circles).
"""

from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Union

from .group_core import GroupPresentation

__all__ = [
    "BipartitionSpec",
    "GenericPresentation",
    "LabelSpace",
    "LatticeCounts",
    "Lens",
    "Manifold",
    "Mixed",
    "NonorientPair",
    "OrientPair",
    "SideGroupoid",
    "SpecError",
    "TorusSlab",
    "boundary_label_space",
    "closed_surface_presentation",
    "lens_canonical",
    "parse_cut",
    "parse_lattice",
    "side_groupoids",
    "surface_presentation",
    "surface_side",
    "torus_slab_side",
    "validate",
]


class SpecError(ValueError):
    """Inconsistent bipartition data."""


@dataclass(frozen=True)
class OrientPair:
    """Sigma_{gx,n} glued to Sigma_{gy,n}; a -1 sign flips the Y side's circle j."""

    gx: int
    gy: int
    n: int
    signs: tuple[int, ...] | None = None


@dataclass(frozen=True)
class NonorientPair:
    """N_{kx,n} glued to N_{ky,n}. Signs are accepted and ignored."""

    kx: int
    ky: int
    n: int
    signs: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Mixed:
    """Sigma_{gx,n} glued to N_{ky,n}. Signs are accepted and ignored."""

    gx: int
    ky: int
    n: int
    signs: tuple[int, ...] | None = None


@dataclass(frozen=True)
class TorusSlab:
    """The n-torus cut along k of its circle directions.

    ``k = 1`` splits T^n into two slabs T^{n-1} x I; ``k >= 2`` cuts out a
    ball-like piece T^{n-k} x D^k.
    """

    n: int
    k: int


@dataclass(frozen=True)
class Lens:
    """Genus-1 Heegaard splitting of the lens space L(q; p)."""

    q: int
    p: int


@dataclass(frozen=True)
class GenericPresentation:
    """User-supplied presentations of both sides.

    Each side's ``boundary_words`` gives the images of the boundary generators;
    both sides must list the same number of boundary words. ``boundary``
    optionally carries relators of the boundary groupoid (used for checks).
    """

    pres_x: GroupPresentation
    pres_y: GroupPresentation
    num_base_points: int
    boundary: GroupPresentation | None = None


Variant = Union[OrientPair, NonorientPair, Mixed, TorusSlab, Lens, GenericPresentation]


@dataclass(frozen=True)
class LatticeCounts:
    """|V_X|, |V_Y|, |V_boundary| and the number of base points |A|."""

    vx: int
    vy: int
    vb: int
    num_base_points: int

    def __post_init__(self) -> None:
        if min(self.vx, self.vy, self.vb) < 0:
            raise SpecError("lattice counts must be non-negative")
        if self.num_base_points < 1:
            raise SpecError("at least one base point is required")
        if self.vb < self.num_base_points:
            raise SpecError("need at least one boundary vertex per base point")

    @property
    def total(self) -> int:
        return self.vx + self.vy + self.vb


@dataclass(frozen=True)
class BipartitionSpec:
    variant: Variant
    lattice: LatticeCounts | None = None


@dataclass(frozen=True)
class Manifold:
    """Descriptor of the glued closed manifold."""

    kind: str
    dim: int
    orientable: bool | None
    genus: int | None = None
    label: str = ""
    extra: tuple = field(default=())


def _check_signs(signs: tuple[int, ...] | None, n: int) -> tuple[int, ...]:
    if signs is None:
        return (1,) * n
    signs = tuple(int(s) for s in signs)
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise SpecError(f"signs must be {n} entries from {{+1, -1}}")
    return signs


def num_base_points(variant: Variant) -> int:
    if isinstance(variant, (OrientPair, NonorientPair, Mixed)):
        return variant.n
    if isinstance(variant, TorusSlab):
        return 2 if variant.k == 1 else 1
    if isinstance(variant, Lens):
        return 1
    return variant.num_base_points


def lens_canonical(q: int, p: int) -> tuple[int, int]:
    """Canonical label (q, p mod q); q = 0 gives S^1 x S^2 as (0, 1)."""
    q, p = int(q), int(p)
    if q < 0:
        q, p = -q, -p
    if q == 0:
        if p not in (1, -1):
            raise SpecError("q = 0 requires p = +-1")
        return (0, 1)
    if math.gcd(p, q) != 1:
        raise SpecError(f"gcd({p}, {q}) != 1")
    return (q, p % q)


def validate(spec: BipartitionSpec | Variant) -> tuple[BipartitionSpec, Manifold]:
    """Normalize a bipartition and describe the glued manifold.

    Idempotent: validating the returned spec gives the same result.
    """
    if not isinstance(spec, BipartitionSpec):
        spec = BipartitionSpec(spec)
    v = spec.variant
    if isinstance(v, OrientPair):
        if v.gx < 0 or v.gy < 0 or v.n < 1:
            raise SpecError("OrientPair needs gx, gy >= 0 and n >= 1")
        signs = _check_signs(v.signs, v.n)
        if signs[0] == -1:
            signs = tuple(-s for s in signs)
        v = replace(v, signs=signs)
        if all(s == 1 for s in signs):
            g = v.gx + v.gy + v.n - 1
            man = Manifold("surface", 2, True, g, f"Sigma_{g}")
        else:
            k = 2 * v.gx + 2 * v.gy + 2 * v.n - 2
            man = Manifold("surface", 2, False, k, f"N_{k}")
    elif isinstance(v, NonorientPair):
        if v.kx < 1 or v.ky < 1 or v.n < 1:
            raise SpecError("NonorientPair needs kx, ky >= 1 and n >= 1")
        if v.signs is not None:
            _check_signs(v.signs, v.n)
            warnings.warn("signs are ignored for NonorientPair", stacklevel=2)
            v = replace(v, signs=None)
        k = v.kx + v.ky + 2 * v.n - 2
        man = Manifold("surface", 2, False, k, f"N_{k}")
    elif isinstance(v, Mixed):
        if v.gx < 0 or v.ky < 1 or v.n < 1:
            raise SpecError("Mixed needs gx >= 0, ky >= 1 and n >= 1")
        if v.signs is not None:
            _check_signs(v.signs, v.n)
            warnings.warn("signs are ignored for Mixed", stacklevel=2)
            v = replace(v, signs=None)
        k = 2 * v.gx + v.ky + 2 * v.n - 2
        man = Manifold("surface", 2, False, k, f"N_{k}")
    elif isinstance(v, TorusSlab):
        if v.n < 2 or not 1 <= v.k <= v.n:
            raise SpecError("TorusSlab needs n >= 2 and 1 <= k <= n")
        man = Manifold("torus", v.n, True, None, f"T^{v.n}")
    elif isinstance(v, Lens):
        q, p = lens_canonical(v.q, v.p)
        v = Lens(q, p)
        label = "S^1xS^2" if q == 0 else ("S^3" if q == 1 else f"L({q};{p})")
        man = Manifold("lens", 3, True, None, label, (q, p))
    elif isinstance(v, GenericPresentation):
        if v.num_base_points < 1:
            raise SpecError("GenericPresentation needs at least one base point")
        bx, by = v.pres_x.boundary_words, v.pres_y.boundary_words
        if bx is None or by is None or len(bx) != len(by):
            raise SpecError("both sides need the same number of boundary words")
        if v.boundary is not None and v.boundary.num_generators != len(bx):
            raise SpecError("boundary presentation must have one generator per boundary word")
        man = Manifold("generic", 0, None, None, "generic")
    else:
        raise SpecError(f"unknown bipartition variant {type(v).__name__}")
    nbp = num_base_points(v)
    lattice = spec.lattice if spec.lattice is not None else LatticeCounts(0, 0, nbp, nbp)
    if lattice.num_base_points != nbp:
        raise SpecError(f"lattice declares {lattice.num_base_points} base points, spec needs {nbp}")
    return BipartitionSpec(v, lattice), man


# ---------------------------------------------------------------- label spaces


@dataclass(frozen=True)
class LabelSpace:
    """Domain of the boundary holonomy label phi."""

    kind: str
    arity: int
    signs: tuple[int, ...] | None = None
    q: int | None = None
    description: str = ""


def boundary_label_space(spec: BipartitionSpec | Variant) -> LabelSpace:
    spec, _ = validate(spec)
    v = spec.variant
    if isinstance(v, (OrientPair, NonorientPair, Mixed)):
        signs = v.signs if isinstance(v, OrientPair) else None
        return LabelSpace("surface", v.n, signs, None, f"G^{v.n} of boundary holonomies")
    if isinstance(v, TorusSlab):
        m = v.n - v.k
        if v.k == 1:
            return LabelSpace("commuting-pair", m, None, None, f"pairs in Comm_{m}(G) related by conjugation")
        return LabelSpace("commuting", m, None, None, f"Comm_{m}(G)")
    if isinstance(v, Lens):
        return LabelSpace("lens", 1, None, v.q, f"{{g : g^{v.q} = 1}}")
    return LabelSpace("generic", len(v.pres_x.boundary_words or ()), None, None, "generic boundary words")


# ---------------------------------------------------------------- presentations


def surface_presentation(
    orientable: bool, genus: int, n: int, signs: tuple[int, ...] | None = None
) -> GroupPresentation:
    """Presentation of the fundamental groupoid of a surface with n boundary circles.

    Generators: a_1, b_1, ... (or a_1..a_k), then boundary loops c_1..c_n, then
    paths f_2..f_n from base point 1 to base point j. One relator:
    prod [a_m, b_m] (or prod a_m^2) times prod_j f_j^-1 c_j f_j with f_1 = 1.
    Boundary words are c_j, inverted where ``signs`` has -1.
    """
    if n < 0 or genus < 0 or (not orientable and genus < 1):
        raise SpecError("invalid surface data")
    names: list[str] = []
    if orientable:
        for m in range(1, genus + 1):
            names += [f"a{m}", f"b{m}"]
    else:
        names += [f"a{m}" for m in range(1, genus + 1)]
    names += [f"c{j}" for j in range(1, n + 1)]
    names += [f"f{j}" for j in range(2, n + 1)]
    idx = {nm: i + 1 for i, nm in enumerate(names)}
    word: list[int] = []
    if orientable:
        for m in range(1, genus + 1):
            a, b = idx[f"a{m}"], idx[f"b{m}"]
            word += [a, b, -a, -b]
    else:
        for m in range(1, genus + 1):
            word += [idx[f"a{m}"]] * 2
    for j in range(1, n + 1):
        c = idx[f"c{j}"]
        if j == 1:
            word.append(c)
        else:
            f = idx[f"f{j}"]
            word += [-f, c, f]
    signs = _check_signs(signs, n)
    boundary = tuple((s * idx[f"c{j}"],) for j, s in zip(range(1, n + 1), signs))
    relators = (tuple(word),) if word else ()
    return GroupPresentation(len(names), relators, boundary, tuple(names))


def closed_surface_presentation(orientable: bool, genus: int) -> GroupPresentation:
    return surface_presentation(orientable, genus, 0)


@dataclass(frozen=True)
class SideGroupoid:
    """A side's fundamental groupoid with typed generators.

    ``arrows[i] = (src, tgt)`` are the base points of generator i; the gauge
    action sends its value h to g_tgt h g_src^-1. ``boundary[j]`` lists the
    generators that carry the boundary holonomies seen at base point j.
    """

    presentation: GroupPresentation
    arrows: tuple[tuple[int, int], ...]
    boundary: tuple[tuple[int, ...], ...]
    orientable: bool | None = None
    genus: int | None = None

    @property
    def num_base_points(self) -> int:
        return len(self.boundary)

    @property
    def boundary_generators(self) -> tuple[int, ...]:
        return tuple(i for grp in self.boundary for i in grp)

    @property
    def free_generators(self) -> tuple[int, ...]:
        fixed = set(self.boundary_generators)
        return tuple(i for i in range(self.presentation.num_generators) if i not in fixed)


def surface_side(orientable: bool, genus: int, n: int) -> SideGroupoid:
    pres = surface_presentation(orientable, genus, n)
    names = pres.names or ()
    arrows = []
    for nm in names:
        if nm.startswith("f"):
            arrows.append((0, int(nm[1:]) - 1))
        elif nm.startswith("c"):
            j = int(nm[1:]) - 1
            arrows.append((j, j))
        else:
            arrows.append((0, 0))
    boundary = tuple((names.index(f"c{j}"),) for j in range(1, n + 1))
    return SideGroupoid(pres, tuple(arrows), boundary, orientable, genus)


def torus_slab_side(n: int) -> SideGroupoid:
    """T^{n-1} x I with one base point on each boundary torus."""
    m = n - 1
    names = [f"p{i}" for i in range(1, m + 1)] + [f"q{i}" for i in range(1, m + 1)] + ["f"]
    p = list(range(1, m + 1))
    q = list(range(m + 1, 2 * m + 1))
    f = 2 * m + 1
    rels = []
    for i in range(m):
        for j in range(i + 1, m):
            rels.append((p[i], p[j], -p[i], -p[j]))
        rels.append((-f, q[i], f, -p[i]))
    bw = tuple((x,) for x in p + q)
    pres = GroupPresentation(2 * m + 1, tuple(rels), bw, tuple(names))
    arrows = tuple([(0, 0)] * m + [(1, 1)] * m + [(0, 1)])
    boundary = (tuple(range(m)), tuple(range(m, 2 * m)))
    return SideGroupoid(pres, arrows, boundary, True, None)


def side_groupoids(spec: BipartitionSpec | Variant) -> tuple[SideGroupoid, SideGroupoid, tuple[int, ...]]:
    """X and Y sides of a surface or k=1 torus-slab spec, plus Y's boundary signs."""
    spec, _ = validate(spec)
    v = spec.variant
    if isinstance(v, OrientPair):
        return surface_side(True, v.gx, v.n), surface_side(True, v.gy, v.n), tuple(v.signs or ())
    if isinstance(v, NonorientPair):
        return surface_side(False, v.kx, v.n), surface_side(False, v.ky, v.n), (1,) * v.n
    if isinstance(v, Mixed):
        return surface_side(True, v.gx, v.n), surface_side(False, v.ky, v.n), (1,) * v.n
    if isinstance(v, TorusSlab) and v.k == 1:
        side = torus_slab_side(v.n)
        return side, side, (1,) * (2 * (v.n - 1))
    raise SpecError("gauge refinement is available for surface specs and TorusSlab with k = 1")


def generic_from_spec(spec: BipartitionSpec | Variant) -> GenericPresentation:
    """Rewrite a surface or lens spec as explicit presentations of both sides."""
    spec, _ = validate(spec)
    v = spec.variant
    if isinstance(v, OrientPair):
        px = surface_presentation(True, v.gx, v.n)
        py = surface_presentation(True, v.gy, v.n, v.signs)
    elif isinstance(v, NonorientPair):
        px = surface_presentation(False, v.kx, v.n)
        py = surface_presentation(False, v.ky, v.n)
    elif isinstance(v, Mixed):
        px = surface_presentation(True, v.gx, v.n)
        py = surface_presentation(False, v.ky, v.n)
    elif isinstance(v, Lens):
        # boundary torus generators (meridian, longitude); X kills its meridian,
        # Y kills p*meridian + q*longitude.
        px = GroupPresentation(1, (), ((), (1,)), ("x",))
        mer = (1,) * v.q
        lon = (-1,) * v.p if v.q else (1,)
        py = GroupPresentation(1, (), (mer, lon), ("y",))
        if v.q == 0:
            py = GroupPresentation(1, (), ((), (1,)), ("y",))
        bd = GroupPresentation(2, ((1, 2, -1, -2),), None, ("mu", "lambda"))
        return GenericPresentation(px, py, 1, bd)
    elif isinstance(v, GenericPresentation):
        return v
    else:
        raise SpecError("no generic presentation for this variant")
    return GenericPresentation(px, py, v.n, GroupPresentation(v.n))


# ---------------------------------------------------------------- parsing


_CUT_RE = re.compile(r"^\s*([a-z\-]+)\s*:\s*(.*)$")


def _kv(body: str) -> dict[str, str]:
    out = {}
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise SpecError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _int(d: dict[str, str], key: str) -> int:
    if key not in d:
        raise SpecError(f"missing field {key!r}")
    try:
        return int(d[key])
    except ValueError as exc:
        raise SpecError(f"field {key!r} must be an integer") from exc


def _signs(text: str | None, n: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    if len(text) != n or any(ch not in "+-" for ch in text):
        raise SpecError(f"signs must be {n} characters from '+-'")
    return tuple(1 if ch == "+" else -1 for ch in text)


def parse_cut(text: str) -> Variant:
    """Parse the CLI cut grammar, e.g. ``orient:gx=1,gy=1,n=1,s=+``."""
    m = _CUT_RE.match(text)
    if not m:
        raise SpecError(f"cannot parse cut {text!r}")
    kind, body = m.group(1), m.group(2)
    if kind == "pres":
        data = json.loads(Path(body).read_text())
        bd = data.get("boundary")
        return GenericPresentation(
            GroupPresentation.from_json(data["x"]),
            GroupPresentation.from_json(data["y"]),
            int(data["base_points"]),
            None if bd is None else GroupPresentation.from_json(bd),
        )
    d = _kv(body)
    if kind == "orient":
        n = _int(d, "n")
        return OrientPair(_int(d, "gx"), _int(d, "gy"), n, _signs(d.get("s"), n))
    if kind == "nonorient":
        n = _int(d, "n")
        return NonorientPair(_int(d, "kx"), _int(d, "ky"), n, _signs(d.get("s"), n))
    if kind == "mixed":
        n = _int(d, "n")
        return Mixed(_int(d, "gx"), _int(d, "ky"), n, _signs(d.get("s"), n))
    if kind == "torus-slab":
        return TorusSlab(_int(d, "n"), _int(d, "k"))
    if kind == "lens":
        return Lens(_int(d, "q"), _int(d, "p"))
    raise SpecError(f"unknown cut kind {kind!r}")


def parse_lattice(text: str | None, base_points: int) -> LatticeCounts:
    """Parse ``vx=..,vy=..,vb=..``; omitted fields default to the minimal lattice."""
    if not text:
        return LatticeCounts(0, 0, base_points, base_points)
    d = _kv(text)
    unknown = set(d) - {"vx", "vy", "vb"}
    if unknown:
        raise SpecError(f"unknown lattice fields {sorted(unknown)}")
    vx = _int(d, "vx") if "vx" in d else 0
    vy = _int(d, "vy") if "vy" in d else 0
    vb = _int(d, "vb") if "vb" in d else base_points
    return LatticeCounts(vx, vy, vb, base_points)


def spec_from_strings(cut: str, lattice: str | None = None) -> BipartitionSpec:
    variant = parse_cut(cut)
    spec, _ = validate(BipartitionSpec(variant))
    return validate(BipartitionSpec(spec.variant, parse_lattice(lattice, num_base_points(spec.variant))))[0]
