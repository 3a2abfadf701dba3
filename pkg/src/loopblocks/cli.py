"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 internal consistency failure,
64 unparseable arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import rep_theory
from ._config import CapExceeded
from .block_engine import blocks, expected_total_dof, total_dof
from .double_mtc import APPENDIX, MAIN, AnyonLabel, anyons, fusion, parse_anyon, s_matrix
from .gauge_engine import (
    PathDisagreement,
    anyon_sector,
    burnside_orbit_count,
    entropy_general,
    gauge_blocks,
    gsd,
    gsd_from_smatrix,
    tee_general,
    tee_value,
)
from .group_core import GroupError, count_homs, load_group
from .lattice_oracle import (
    brute_force_flat_count,
    compare_blocks,
    empirical_gauge_dof,
    flat_configurations,
    lattice_presentation,
    parse_lattice_name,
)
from .rep_theory import (
    K_tensor,
    R_tensor,
    RoundingError,
    character_table,
    gluing_identity,
    lens_image_size,
)
from .topology import (
    Mixed,
    NonorientPair,
    OrientPair,
    SpecError,
    generic_from_spec,
    spec_from_strings,
    surface_presentation,
)

__all__ = ["EXIT_CONSISTENCY", "EXIT_OK", "EXIT_USAGE", "EXIT_VALIDATION", "RunConfig", "main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONSISTENCY = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class ConsistencyFailure(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    group: str | None
    cut: str | None
    lattice: str | None
    json_out: str | None
    threads: int
    seed: int
    convention: str
    tolerance: float

    def __post_init__(self) -> None:
        if self.threads < 1:
            raise ValueError("--threads must be positive")
        if not 0 < self.tolerance <= 1e-3:
            raise ValueError("--tol must lie in (0, 1e-3]")


# ---------------------------------------------------------------- helpers


def _names(group, elems) -> list[str]:
    names = group.element_names
    return [names[int(x)] if names is not None else str(int(x)) for x in elems]


def _complex_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _fmt_complex(z: complex) -> str:
    re, im = round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def _table(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.json_out is None:
        print(text)
        return
    dump = json.dumps(payload, indent=2, sort_keys=False)
    if cfg.json_out == "-":
        print(dump)
    else:
        Path(cfg.json_out).write_text(dump + "\n")
        print(text)


def _ct(cfg: RunConfig):
    if not cfg.group:
        raise UsageError("--group is required")
    return character_table(load_group(cfg.group), seed=cfg.seed)


def _spec(cfg: RunConfig, default_cut: str | None = None):
    cut = cfg.cut or default_cut
    if not cut:
        raise UsageError("--cut is required")
    return spec_from_strings(cut, cfg.lattice)


def _surface_arg(text: str) -> tuple[bool, int]:
    kind, _, num = text.partition(":")
    if kind not in ("genus", "crosscap") or not num.strip().lstrip("-").isdigit():
        raise UsageError("--surface must be genus:N or crosscap:N")
    return kind == "genus", int(num)


# ---------------------------------------------------------------- commands


def cmd_chartable(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    g = ct.group
    reps = [int(r) for r in g.conjugacy.class_rep]
    payload = {
        "group": g.name,
        "order": g.order,
        "classes": [_names(g, c) for c in g.conjugacy.classes],
        "class_sizes": [int(s) for s in ct.class_sizes],
        "dims": [int(d) for d in ct.dims],
        "fs_indicators": [int(i) for i in ct.fs.iota],
        "characters": [[_complex_json(z) for z in row] for row in ct.chars],
    }
    head = ["", "FS"] + [f"[{n}]" for n in _names(g, reps)]
    sizes = ["size", ""] + [str(int(s)) for s in ct.class_sizes]
    rows = [head, sizes]
    for a in range(ct.num_irreps):
        rows.append([f"chi{a}", f"{int(ct.fs.iota[a]):+d}"] + [_fmt_complex(z) for z in ct.chars[a]])
    text = f"{g.name}: order {g.order}, {len(reps)} classes\n" + _table(rows)
    if cfg.json_out is None:
        print(text)
        print(json.dumps(payload))
    else:
        _emit(cfg, payload, text)
    return EXIT_OK


def cmd_blocks(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    spec = _spec(cfg)
    t0 = time.perf_counter()
    bs = blocks(spec, ct)
    expected = expected_total_dof(spec, ct)
    found = total_dof(bs)
    if found != expected:
        raise ConsistencyFailure(f"total dof {found} != closed-form count {expected}")
    g = ct.group
    lines = [f"group {g.name}, cut {cfg.cut}, lattice {spec.lattice}", f"topological part: {bs.summary()}"]
    for b in bs.blocks:
        lines.append(
            f"  [{','.join(_names(g, b.label))}]  mult {b.mult.coeff}*|G|^{b.mult.gpow}"
            f"  rows {b.rows.coeff}*|G|^{b.rows.gpow}  cols {b.cols.coeff}*|G|^{b.cols.gpow}"
        )
    lines.append(f"total dof {found} ({time.perf_counter() - t0:.3f} s)")
    _emit(cfg, bs.to_json(g), "\n".join(lines))
    return EXIT_OK


def cmd_gauge_blocks(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    spec = _spec(cfg)
    gbs = gauge_blocks(spec, ct, check_smatrix=not args.no_check, threads=cfg.threads)
    g = ct.group
    lines = [f"group {g.name}, cut {cfg.cut}, base points {gbs.num_base_points}"]
    for o in gbs.orbits:
        secs = ", ".join(f"{s.alpha}: d={s.d} x={s.x} y={s.y}" for s in o.sectors)
        lines.append(f"  [{','.join(_names(g, o.label))}] |orbit|={o.orbit_size} |G_phi|={o.stabilizer_order}  {secs}")
    lines.append(f"sum x*y = {gbs.sum_xy()}")
    _emit(cfg, gbs.to_json(g), "\n".join(lines))
    return EXIT_OK


def cmd_tee(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    spec = _spec(cfg, "orient:gx=0,gy=0,n=2")
    g = ct.group
    gbs = gauge_blocks(spec, ct, check_smatrix=False, threads=cfg.threads)
    a = parse_anyon(g, args.anyon) if args.anyon else AnyonLabel(0, 0)
    orbit, sector = anyon_sector(gbs, a.class_rep, a.irrep)
    val = tee_value(g.order, gbs.num_base_points, orbit.orbit_size, sector.d)
    payload = {
        "anyon": a.name(g),
        "orbit": list(orbit.label),
        "sector": list(sector.alpha),
        "orbit_size": orbit.orbit_size,
        "d": sector.d,
        "tee": val,
    }
    _emit(cfg, payload, f"TEE {a.name(g)} = {val:.12f} nats (|A| ln|G| - ln(|[phi]| d), |[phi]|={orbit.orbit_size}, d={sector.d})")
    return EXIT_OK


def cmd_entropy(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    spec = _spec(cfg, "orient:gx=0,gy=0,n=2")
    if not args.state:
        raise UsageError("--state is required")
    state = json.loads(Path(args.state).read_text())
    amps = {}
    for entry in state.get("amplitudes", []):
        key = (tuple(int(x) for x in entry["orbit"]), tuple(int(x) for x in entry["sector"]))
        vals = entry["values"]
        amps[key] = [complex(*v) if isinstance(v, list) else complex(v) for v in vals]
    if not amps:
        raise ValueError("state has no amplitudes")
    gbs = gauge_blocks(spec, ct, check_smatrix=False, threads=cfg.threads)
    s = entropy_general(gbs, amps)
    tee = tee_general(gbs, amps)
    payload = {"entropy": s, "tee": tee, "vb": spec.lattice.vb, "base_points": gbs.num_base_points}
    _emit(cfg, payload, f"S = {s:.12f} nats, TEE = {tee:.12f} nats")
    return EXIT_OK


def cmd_gsd(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    orientable, genus = _surface_arg(args.surface or "genus:1")
    exact = gsd(ct, orientable=orientable, genus=genus)
    via_s = gsd_from_smatrix(ct, orientable=orientable, genus=genus, convention=cfg.convention)
    if exact != via_s:
        raise ConsistencyFailure(f"gsd {exact} != S-matrix value {via_s}")
    _emit(cfg, {"surface": args.surface or "genus:1", "gsd": exact}, str(exact))
    return EXIT_OK


def cmd_smatrix(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    sm = s_matrix(ct, convention=cfg.convention)
    g = ct.group
    names = [a.name(g) for a in sm.anyons]
    rows = [[""] + names]
    for i, n in enumerate(names):
        rows.append([n] + [_fmt_complex(z) for z in sm.entries[i]])
    _emit(cfg, sm.to_json(), f"S matrix of D({g.name}), {cfg.convention} convention\n" + _table(rows))
    return EXIT_OK


def cmd_fusion(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    g = ct.group
    if not (args.a and args.b):
        raise UsageError("--a and --b are required")
    a, b = parse_anyon(g, args.a), parse_anyon(g, args.b)
    targets = [parse_anyon(g, args.c)] if args.c else anyons(ct)
    out = {c.name(g): fusion(ct, a, b, c, convention=cfg.convention) for c in targets}
    if args.c:
        text = str(next(iter(out.values())))
    else:
        text = " + ".join(f"{v}{k}" if v > 1 else k for k, v in out.items() if v) or "0"
    _emit(cfg, {"a": a.name(g), "b": b.name(g), "fusion": out}, text)
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    g = ct.group
    lat = parse_lattice_name(args.lattice or "torus:2")
    check = args.check
    if check == "blocks":
        ok, emp, pred = compare_blocks(lat, ct)
        payload = {
            "lattice": lat.name,
            "match": ok,
            "empirical": [[r, c, n] for (r, c), n in sorted(emp.items())],
            "predicted": [[r, c, n] for (r, c), n in sorted(pred.items())],
        }
        text = f"{lat.name}: empirical {dict(sorted(emp.items()))} predicted {dict(sorted(pred.items()))} -> {'match' if ok else 'MISMATCH'}"
    elif check == "gaugedof":
        emp = empirical_gauge_dof(lat, g)
        if lat.surface is None:
            raise ValueError(f"lattice {lat.name} has no closed-surface type")
        orientable, genus = lat.surface
        pred = gsd(ct, orientable=orientable, genus=genus)
        ok = emp == pred
        payload = {"lattice": lat.name, "empirical": emp, "gsd": pred, "match": ok}
        text = f"{lat.name}: gauge orbits {emp}, gsd {pred} -> {'match' if ok else 'MISMATCH'}"
    else:
        cfgs = flat_configurations(lat, g)
        pres, _ = lattice_presentation(lat)
        pred = count_homs(g, pres) * g.order ** (lat.num_vertices - 1)
        distinct = int(np.unique(cfgs, axis=0).shape[0])
        try:
            brute = brute_force_flat_count(lat, g)
        except CapExceeded:
            brute = None
        ok = cfgs.shape[0] == pred == distinct and brute in (None, pred)
        payload = {"lattice": lat.name, "generated": int(cfgs.shape[0]), "distinct": distinct, "predicted": pred, "brute_force": brute, "match": ok}
        text = f"{lat.name}: generated {cfgs.shape[0]} ({distinct} distinct), |Hom| |G|^(|V|-1) = {pred}, brute force {brute} -> {'match' if ok else 'MISMATCH'}"
    _emit(cfg, payload, text)
    return EXIT_OK if ok else EXIT_CONSISTENCY


# ---------------------------------------------------------------- verify


def _surface_cuts(max_surface: int) -> list[str]:
    """Surface cuts whose glued Euler-characteristic measure 2gamma+n or k+n is at most max_surface."""
    cuts = []
    for n in range(1, max_surface + 1):
        for gx in range(max_surface):
            for gy in range(gx, max_surface):
                gam = gx + gy + n - 1
                if 2 * gam + n <= max_surface:
                    cuts.append(f"orient:gx={gx},gy={gy},n={n}")
                    if n >= 2:
                        cuts.append(f"orient:gx={gx},gy={gy},n={n},s=+{'-' * (n - 1)}")
        for kx in range(1, max_surface + 1):
            for ky in range(kx, max_surface + 1):
                if kx + ky + 2 * n - 2 + n <= max_surface:
                    cuts.append(f"nonorient:kx={kx},ky={ky},n={n}")
        for gx in range(max_surface):
            for ky in range(1, max_surface + 1):
                if 2 * gx + ky + 2 * n - 2 + n <= max_surface:
                    cuts.append(f"mixed:gx={gx},ky={ky},n={n}")
    return cuts


def _verify_suites(ct, max_surface: int, threads: int, convention: str) -> list[tuple[str, Callable[[], str]]]:
    g = ct.group
    suites: list[tuple[str, Callable[[], str]]] = []

    def gluing() -> str:
        count = 0
        for n in range(1, max_surface + 1):
            for x in range(max_surface):
                for y in range(max_surface):
                    trials = [("RR", x, y, 2 * (x + y + n - 1) + n)]
                    if x >= 1 and y >= 1:
                        trials.append(("KK", x, y, x + y + 2 * n - 2 + n))
                    if y >= 1:
                        trials.append(("RK", x, y, 2 * x + y + 2 * n - 2 + n))
                    for kind, a, b, size in trials:
                        if size <= max_surface:
                            lhs, rhs = gluing_identity(ct, kind, a, b, n)
                            if lhs != rhs:
                                raise ConsistencyFailure(f"{kind}({a},{b},{n}): {lhs} != {rhs}")
                            count += 1
        return f"{count} identities"

    def symmetry() -> str:
        inv = ct.inverse_class
        count = 0
        for gen in range(3):
            for n in range(1, 4):
                if 2 * gen + n > max_surface + 1:
                    continue
                t = R_tensor(ct, gen, n)
                if not np.array_equal(t, t[np.ix_(*[inv] * n)]):
                    raise ConsistencyFailure(f"R_{{{gen},{n}}} is not inversion symmetric")
                count += 1
        return f"{count} tensors"

    def hom_counts() -> str:
        count = 0
        for orientable in (True, False):
            for gen in range(0 if orientable else 1, 3):
                for n in range(1, 4):
                    free = (2 * gen if orientable else gen) + n - 1
                    if free > 3 or free + 1 > max_surface + 1:
                        continue
                    t = R_tensor(ct, gen, n) if orientable else K_tensor(ct, gen, n)
                    pres = surface_presentation(orientable, gen, n)
                    ngen = pres.num_generators
                    bidx = [ngen - 2 * n + 1 + j for j in range(n)]
                    for cls in np.ndindex(*t.shape):
                        fixed = {b: int(g.conjugacy.class_rep[c]) for b, c in zip(bidx, cls)}
                        direct = count_homs(g, pres, fixed=fixed)
                        if direct != int(t[cls]):
                            raise ConsistencyFailure(f"{'R' if orientable else 'K'}_{{{gen},{n}}}{cls}: {t[cls]} != {direct}")
                        count += 1
        return f"{count} labels"

    def block_dof() -> str:
        for cut in _surface_cuts(max_surface):
            spec = spec_from_strings(cut)
            bs = blocks(spec, ct)
            if total_dof(bs) != expected_total_dof(spec, ct):
                raise ConsistencyFailure(f"{cut}: total dof mismatch")
            gen_bs = blocks(generic_from_spec(spec), ct)
            if gen_bs.shape_counter() != bs.shape_counter():
                raise ConsistencyFailure(f"{cut}: generic path disagrees")
        return f"{len(_surface_cuts(max_surface))} cuts"

    def gauge() -> str:
        count = 0
        for cut in _surface_cuts(min(max_surface, 4)):
            spec = spec_from_strings(cut)
            gbs = gauge_blocks(spec, ct, threads=threads)
            v = spec.variant
            orientable, genus = _glued(v)
            target = gsd(ct, orientable=orientable, genus=genus)
            burn = burnside_orbit_count(spec, ct, threads=threads)
            if not gbs.sum_xy() == target == burn:
                raise ConsistencyFailure(f"{cut}: sum xy {gbs.sum_xy()}, gsd {target}, Burnside {burn}")
            count += 1
        return f"{count} cuts"

    def smat() -> str:
        sm = s_matrix(ct, convention=convention)
        s = sm.entries
        if not np.allclose(s, s.T, atol=1e-9) or not np.allclose(s @ s.conj().T, np.eye(len(s)), atol=1e-9):
            raise ConsistencyFailure("S is not symmetric unitary")
        sm.charge_conjugation  # raises unless S^2 is a permutation
        if abs(sum(d * d for d in (s[:, 0].real * g.order)) - g.order**2) > 1e-6:
            raise ConsistencyFailure("total quantum dimension is not |G|")
        for orientable in (True, False):
            for gen in range(0 if orientable else 1, max_surface + 1):
                a, b = gsd(ct, orientable=orientable, genus=gen), gsd_from_smatrix(ct, orientable=orientable, genus=gen, convention=convention)
                if a != b:
                    raise ConsistencyFailure(f"gsd {a} != S-matrix gsd {b}")
        return f"{len(s)} anyons"

    def lens() -> str:
        for q in range(0, 7):
            direct = g.order if q == 0 else int(np.count_nonzero(g.power_map(q) == 0))
            if q and lens_image_size(ct, q) != direct:
                raise ConsistencyFailure(f"lens q={q}: {lens_image_size(ct, q)} != {direct}")
            for p in (p for p in range(1, 8) if math.gcd(p, q) == 1):
                spec = spec_from_strings(f"lens:q={q},p={p}") if q else None
                if spec is not None and total_dof(blocks(spec, ct)) != direct:
                    raise ConsistencyFailure(f"lens L({q};{p}) depends on p")
        return "q <= 6"

    def oracle() -> str:
        if g.order > 6:
            return "skipped for |G| > 6"
        names = ("torus:2:tube", "torus:2:disk", "klein:2:tube", "klein:2:mobius", "klein:2:disk", "rp2:2:disk")
        for name in names:
            lat = parse_lattice_name(name)
            ok, emp, pred = compare_blocks(lat, ct)
            if not ok:
                raise ConsistencyFailure(f"{name}: empirical {dict(emp)} != predicted {dict(pred)}")
            orientable, genus = lat.surface
            if empirical_gauge_dof(lat, g) != gsd(ct, orientable=orientable, genus=genus):
                raise ConsistencyFailure(f"{name}: gauge orbit count differs from gsd")
        return f"{len(names)} lattices"

    suites += [
        ("gluing identities", gluing),
        ("R inversion symmetry", symmetry),
        ("R/K vs Hom enumeration", hom_counts),
        ("block dof and generic path", block_dof),
        ("gauge blocks vs gsd vs Burnside", gauge),
        ("S matrix", smat),
        ("lens spaces", lens),
        ("lattice oracle", oracle),
    ]
    return suites


def _glued(v) -> tuple[bool, int]:
    if isinstance(v, OrientPair):
        if v.signs is None or len(set(v.signs)) == 1:
            return True, v.gx + v.gy + v.n - 1
        return False, 2 * v.gx + 2 * v.gy + 2 * v.n - 2
    if isinstance(v, NonorientPair):
        return False, v.kx + v.ky + 2 * v.n - 2
    if isinstance(v, Mixed):
        return False, 2 * v.gx + v.ky + 2 * v.n - 2
    raise SpecError("not a surface pair")


def cmd_verify(cfg: RunConfig, args) -> int:
    ct = _ct(cfg)
    failures = 0
    results = []
    for name, fn in _verify_suites(ct, args.max_surface, cfg.threads, cfg.convention):
        t0 = time.perf_counter()
        try:
            detail = fn()
            ok = True
        except (ConsistencyFailure, PathDisagreement, RoundingError) as exc:
            detail = str(exc)
            ok = False
            failures += 1
        dt = time.perf_counter() - t0
        results.append({"suite": name, "ok": ok, "detail": detail, "seconds": dt})
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail} ({dt:.2f} s)", file=sys.stderr if cfg.json_out == "-" else sys.stdout)
    _emit(cfg, {"group": ct.group.name, "results": results}, f"{len(results) - failures}/{len(results)} suites passed")
    return EXIT_OK if failures == 0 else EXIT_CONSISTENCY


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", help="built-in name such as D6 or Z2xS3, or file:<path.json>")
    common.add_argument("--cut", help="orient:gx=,gy=,n=[,s=+-] | nonorient:kx=,ky=,n= | mixed:gx=,ky=,n= | torus-slab:n=,k= | lens:q=,p= | pres:<file>")
    common.add_argument("--lattice", help="vx=..,vy=..,vb=.. (defaults to vb = base points)")
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH", help="emit JSON to PATH (stdout if omitted)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for the character-table diagonalization")
    common.add_argument("--convention", choices=(APPENDIX, MAIN), default=APPENDIX, help="S-matrix convention")
    common.add_argument("--tol", type=float, default=1e-6, help="rounding tolerance in (0, 1e-3]")

    p = _Parser(prog="loopblocks", description="Block structure of loop-symmetric states in finite-group gauge theories.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("chartable", parents=[common], help="character table")
    sub.add_parser("blocks", parents=[common], help="reduced-density-matrix block structure")
    gb = sub.add_parser("gauge-blocks", parents=[common], help="gauge-invariant sector multiplicities")
    gb.add_argument("--no-check", action="store_true", help="skip the S-matrix cross-check")
    tee = sub.add_parser("tee", parents=[common], help="topological entanglement entropy of an anyon sector")
    tee.add_argument("--anyon", help="anyon such as '[r]:1' (vacuum by default)")
    ent = sub.add_parser("entropy", parents=[common], help="entropy of a state given by sector amplitudes")
    ent.add_argument("--state", help="state JSON file")
    gs = sub.add_parser("gsd", parents=[common], help="ground-state degeneracy on a closed surface")
    gs.add_argument("--surface", help="genus:N or crosscap:N")
    sub.add_parser("smatrix", parents=[common], help="modular S matrix of the quantum double")
    fu = sub.add_parser("fusion", parents=[common], help="Verlinde fusion coefficients")
    fu.add_argument("--a")
    fu.add_argument("--b")
    fu.add_argument("--c", help="target anyon; all targets when omitted")
    orc = sub.add_parser(
        "oracle", parents=[common], help="brute-force lattice checks; --lattice names a lattice such as torus:2 or klein:3:mobius"
    )
    orc.add_argument("--check", choices=("blocks", "gaugedof", "flatcount"), default="blocks")
    ver = sub.add_parser("verify", parents=[common], help="run every consistency suite for one group")
    ver.add_argument("--max-surface", type=int, default=4)
    return p


_COMMANDS = {
    "chartable": cmd_chartable,
    "blocks": cmd_blocks,
    "gauge-blocks": cmd_gauge_blocks,
    "tee": cmd_tee,
    "entropy": cmd_entropy,
    "gsd": cmd_gsd,
    "smatrix": cmd_smatrix,
    "fusion": cmd_fusion,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.group, args.cut, args.lattice, args.json, args.threads, args.seed, args.convention, args.tol)
        saved, rep_theory.ROUND_TOL = rep_theory.ROUND_TOL, cfg.tolerance
        try:
            return _COMMANDS[args.command](cfg, args)
        finally:
            rep_theory.ROUND_TOL = saved
    except UsageError as exc:
        print(f"loopblocks {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyFailure, PathDisagreement, RoundingError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (SpecError, GroupError, CapExceeded, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
