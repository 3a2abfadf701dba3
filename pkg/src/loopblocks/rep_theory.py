"""Character tables, Frobenius-Schur indicators and the R/K class functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._config import ORDER_CAP, cap
from .group_core import FiniteGroup, subgroup

__all__ = [
    "CharacterTable",
    "FSData",
    "K",
    "K_tensor",
    "R",
    "R_tensor",
    "RoundingError",
    "SubgroupTable",
    "character_table",
    "closed_hom_count",
    "fs_indicators",
    "gluing_identity",
    "higher_fs",
    "lens_image_size",
    "regular_delta",
    "subgroup_table",
]

ROUND_TOL = 1e-6
_MAX_ATTEMPTS = 16


class RoundingError(ArithmeticError):
    """A quantity that must be an integer failed to round."""


def round_int(value: complex | float, what: str = "value", tol: float | None = None) -> int:
    """Round to the nearest integer, insisting on a residual below ``tol`` (default ROUND_TOL)."""
    tol = ROUND_TOL if tol is None else tol
    z = complex(value)
    scale = max(1.0, abs(z))
    if abs(z.imag) > tol * scale:
        raise RoundingError(f"{what} has imaginary part {z.imag:.3g}")
    r = round(z.real)
    if abs(z.real - r) > tol * scale:
        raise RoundingError(f"{what} = {z.real!r} is not an integer")
    return int(r)


@dataclass(frozen=True)
class FSData:
    iota: tuple[int, ...]
    nu: dict[tuple[int, int], float] = field(default_factory=dict, compare=False)


@dataclass(eq=False)
class CharacterTable:
    """Irreducible characters of a finite group, one row per irrep and one column per class."""

    group: FiniteGroup
    chars: np.ndarray
    dims: np.ndarray
    class_sizes: np.ndarray

    @property
    def num_irreps(self) -> int:
        return int(self.chars.shape[0])

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def class_of(self) -> np.ndarray:
        return self.group.conjugacy.class_of

    @property
    def centralizer_orders(self) -> np.ndarray:
        return self.group.order // self.class_sizes

    @property
    def on_elements(self) -> np.ndarray:
        """Characters evaluated on every element (irreps x |G|)."""
        cached = self.__dict__.get("_on_elements")
        if cached is None:
            cached = self.chars[:, self.class_of]
            cached.setflags(write=False)
            self.__dict__["_on_elements"] = cached
        return cached

    @property
    def inverse_class(self) -> np.ndarray:
        """Class index of ``c^-1`` for each class index ``c``."""
        cached = self.__dict__.get("_inverse_class")
        if cached is None:
            g = self.group
            cached = np.array([self.class_of[g.inverse[r]] for r in g.conjugacy.class_rep])
            self.__dict__["_inverse_class"] = cached
        return cached

    @property
    def fs(self) -> FSData:
        cached = self.__dict__.get("_fs")
        if cached is None:
            cached = fs_indicators(self)
            self.__dict__["_fs"] = cached
        return cached

    def conjugate_irrep(self, alpha: int) -> int:
        """Index of the complex-conjugate irrep."""
        target = np.conj(self.chars[alpha])
        for beta in range(self.num_irreps):
            if np.allclose(self.chars[beta], target, atol=1e-8):
                return beta
        raise RoundingError("conjugate character not found in table")

    def identify(self, values_on_elements: np.ndarray) -> int:
        """Index of the irrep whose character equals the given element vector."""
        diffs = np.abs(self.on_elements - values_on_elements[None, :]).max(axis=1)
        best = int(np.argmin(diffs))
        if diffs[best] > 1e-7:
            raise RoundingError("vector is not an irreducible character")
        return best


def _structure_matrices(g: FiniteGroup) -> np.ndarray:
    """``M[i, j, l]`` = #{(x, y) in C_i x C_j : x y = rep_l}."""
    conj = g.conjugacy
    k = conj.num_classes
    cls = conj.class_of
    xs = np.arange(g.order)
    out = np.zeros((k, k, k), dtype=np.float64)
    for ell, z in enumerate(conj.class_rep):
        ys = g.cayley[g.inverse[xs], z]
        np.add.at(out, (cls[xs], cls[ys], ell), 1.0)
    return out


def _dixon_attempt(g: FiniteGroup, rng: np.random.Generator) -> np.ndarray | None:
    conj = g.conjugacy
    k = conj.num_classes
    sizes = conj.class_sizes.astype(np.float64)
    if k == 1:
        return np.ones((1, 1), dtype=complex)
    mats = _structure_matrices(g)
    weights = rng.standard_normal(k)
    combo = np.tensordot(weights, mats, axes=1)
    evals, evecs = np.linalg.eig(combo)
    gaps = np.abs(evals[:, None] - evals[None, :])
    np.fill_diagonal(gaps, np.inf)
    if gaps.min() < 1e-6 * max(1.0, np.abs(evals).max()):
        return None
    omegas = (evecs / evecs[0:1, :]).T  # row per irrep: central character on classes
    resid = max(
        np.abs(mats[i] @ omegas.T - omegas.T * omegas[:, i][None, :]).max() for i in range(k)
    )
    if resid > 1e-8 * max(1.0, np.abs(mats).max()):
        return None
    norms = (np.abs(omegas) ** 2 / sizes[None, :]).sum(axis=1)
    dims = np.sqrt(g.order / norms)
    return dims[:, None] * omegas / sizes[None, :]


def _canonical_order(chars: np.ndarray) -> np.ndarray:
    k = chars.shape[0]
    trivial = [a for a in range(k) if np.allclose(chars[a], 1.0, atol=1e-8)]
    if len(trivial) != 1:
        raise RoundingError("trivial character not found exactly once")

    def key(a: int):
        row = chars[a]
        return (round(row[0].real), tuple((round(z.real, 8), round(z.imag, 8)) for z in row))

    rest = sorted((a for a in range(k) if a != trivial[0]), key=key)
    return np.array(trivial + rest, dtype=np.int64)


def _clean(chars: np.ndarray) -> np.ndarray:
    re = np.where(np.abs(chars.real - np.round(chars.real)) < 1e-11, np.round(chars.real), chars.real)
    im = np.where(np.abs(chars.imag) < 1e-11, 0.0, chars.imag)
    return re + 1j * im


def character_table(g: FiniteGroup, *, seed: int = 0) -> CharacterTable:
    """Character table by the Burnside/Dixon class-algebra method (cached per group)."""
    cached = g.__dict__.get("_character_table")
    if cached is not None:
        return cached
    if g.order > cap(ORDER_CAP):
        raise ValueError(f"|G| = {g.order} exceeds the character-table cap")
    rng = np.random.default_rng(seed)
    chars = None
    for _ in range(_MAX_ATTEMPTS):
        chars = _dixon_attempt(g, rng)
        if chars is not None:
            break
    if chars is None:
        raise RoundingError(f"class-algebra diagonalization failed after {_MAX_ATTEMPTS} attempts")
    chars = _clean(chars)
    chars = chars[_canonical_order(chars)]
    sizes = g.conjugacy.class_sizes
    dims = np.array([round_int(chars[a, 0], "irrep dimension") for a in range(len(chars))])
    if int((dims**2).sum()) != g.order:
        raise RoundingError("sum of squared dimensions differs from |G|")
    gram = (chars * sizes[None, :]) @ chars.conj().T / g.order
    if np.abs(gram - np.eye(len(chars))).max() > 1e-9:
        raise RoundingError("row orthogonality violated")
    chars.setflags(write=False)
    dims.setflags(write=False)
    ct = CharacterTable(g, chars, dims, sizes)
    g.__dict__["_character_table"] = ct
    return ct


def fs_indicators(ct: CharacterTable) -> FSData:
    """Frobenius-Schur indicators (1/|G|) sum_g chi(g^2), rounded to {-1, 0, 1}."""
    g = ct.group
    sq = g.power_map(2)
    vals = ct.on_elements[:, sq].sum(axis=1) / g.order
    iota = tuple(round_int(v, "Frobenius-Schur indicator") for v in vals)
    if any(i not in (-1, 0, 1) for i in iota):
        raise RoundingError("indicator outside {-1, 0, 1}")
    return FSData(iota)


def higher_fs(ct: CharacterTable, q: int, alpha: int) -> float:
    """Higher indicator nu_q = (1/|G|) sum_g chi(g^q)."""
    if q < 0:
        raise ValueError("q must be non-negative")
    key = (q, alpha)
    hit = ct.fs.nu.get(key)
    if hit is not None:
        return hit
    g = ct.group
    val = ct.on_elements[alpha, g.power_map(q)].sum() / g.order
    if abs(val.imag) > ROUND_TOL:
        raise RoundingError(f"nu_{q} has imaginary part {val.imag:.3g}")
    ct.fs.nu[key] = float(val.real)
    return float(val.real)


def lens_image_size(ct: CharacterTable, q: int) -> int:
    """sum_alpha d_alpha nu_q^alpha, the number of solutions of g^q = 1."""
    return round_int(sum(ct.dims[a] * higher_fs(ct, q, a) for a in range(ct.num_irreps)), "lens image size")


def _weights(ct: CharacterTable, exponent: int, iota_power: int | None) -> np.ndarray:
    ratio = ct.order / ct.dims.astype(np.float64)
    w = ratio**exponent
    if iota_power is not None:
        w = w * np.array(ct.fs.iota, dtype=np.float64) ** iota_power
    return w


def _class_function(ct: CharacterTable, weights: np.ndarray, classes: Sequence[int]) -> complex:
    prod = np.ones(ct.num_irreps, dtype=complex)
    for c in classes:
        prod = prod * ct.chars[:, int(c)]
    return complex((weights * prod).sum())


def R(ct: CharacterTable, genus: int, n: int, classes: Sequence[int]) -> int:
    """R_{gamma,n}(c) = sum_alpha (|G|/d_alpha)^{2 gamma + n - 2} prod_j chi^alpha(c_j).

    ``classes`` holds class indices. Counts boundary-constrained Hom elements
    of a genus-gamma surface with n boundary circles.
    """
    if genus < 0 or n < 0 or len(classes) != n:
        raise ValueError("need genus >= 0 and exactly n class labels")
    val = _class_function(ct, _weights(ct, 2 * genus + n - 2, None), classes)
    out = round_int(val, f"R_{{{genus},{n}}}")
    if out < 0:
        raise RoundingError(f"R_{{{genus},{n}}} is negative")
    return out


def K(ct: CharacterTable, k: int, n: int, classes: Sequence[int]) -> int:
    """K_{k,n}(c) = sum_alpha iota_alpha^k (|G|/d_alpha)^{k + n - 2} prod_j chi^alpha(c_j)."""
    if k < 1 or n < 0 or len(classes) != n:
        raise ValueError("need k >= 1 and exactly n class labels")
    val = _class_function(ct, _weights(ct, k + n - 2, k), classes)
    out = round_int(val, f"K_{{{k},{n}}}")
    if out < 0:
        raise RoundingError(f"K_{{{k},{n}}} is negative")
    return out


def _tensor(ct: CharacterTable, weights: np.ndarray, n: int, what: str) -> np.ndarray:
    k = ct.num_irreps
    total = np.zeros((ct.chars.shape[1],) * n, dtype=complex)
    for a in range(k):
        term = np.array(weights[a], dtype=complex)
        for _ in range(n):
            term = np.multiply.outer(term, ct.chars[a])
        total = total + term
    scale = np.maximum(1.0, np.abs(total))
    rounded = np.round(total.real)
    if np.any(np.abs(total - rounded) > ROUND_TOL * scale):
        raise RoundingError(f"{what} tensor is not integral")
    if np.any(rounded < 0):
        raise RoundingError(f"{what} tensor has negative entries")
    return np.array([int(v) for v in rounded.reshape(-1)], dtype=object).reshape(rounded.shape)


def R_tensor(ct: CharacterTable, genus: int, n: int) -> np.ndarray:
    """R_{gamma,n} on every class tuple, as an integer (object) array of shape (k,)*n."""
    return _tensor(ct, _weights(ct, 2 * genus + n - 2, None), n, f"R_{{{genus},{n}}}")


def K_tensor(ct: CharacterTable, k: int, n: int) -> np.ndarray:
    """K_{k,n} on every class tuple."""
    return _tensor(ct, _weights(ct, k + n - 2, k), n, f"K_{{{k},{n}}}")


def _class_weighted_pairing(ct: CharacterTable, a: np.ndarray, b: np.ndarray, n: int) -> int:
    """sum over class tuples c of prod_j |[c_j]| a(c) b(c)."""
    sizes = np.array([int(s) for s in ct.class_sizes], dtype=object)
    w = np.array(1, dtype=object)
    for _ in range(n):
        w = np.multiply.outer(w, sizes)
    return int(np.sum(w * a * b))


def gluing_identity(ct: CharacterTable, kind: str, x: int, y: int, n: int) -> tuple[int, int]:
    """Both sides of a gluing identity, as exact integers (lhs, rhs).

    ``kind`` is ``"RR"`` (genus x and y, glued genus x+y+n-1), ``"KK"``
    (crosscaps x and y, glued k = x+y+2n-2) or ``"RK"`` (genus x, crosscaps y,
    glued k = 2x+y+2n-2). lhs = |G|^n R_{.,0} (or K_{.,0}), computed as
    |G|^(n-1) |Hom(pi_1, G)| so that it stays integral on the sphere; rhs is
    the class-size weighted sum of the side functions over boundary labels.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    order = ct.order
    if kind == "RR":
        lhs = order ** (n - 1) * closed_hom_count(ct, orientable=True, genus=x + y + n - 1)
        rhs = _class_weighted_pairing(ct, R_tensor(ct, x, n), R_tensor(ct, y, n), n)
    elif kind == "KK":
        lhs = order ** (n - 1) * closed_hom_count(ct, orientable=False, genus=x + y + 2 * n - 2)
        rhs = _class_weighted_pairing(ct, K_tensor(ct, x, n), K_tensor(ct, y, n), n)
    elif kind == "RK":
        lhs = order ** (n - 1) * closed_hom_count(ct, orientable=False, genus=2 * x + y + 2 * n - 2)
        rhs = _class_weighted_pairing(ct, R_tensor(ct, x, n), K_tensor(ct, y, n), n)
    else:
        raise ValueError(f"unknown gluing kind {kind!r}")
    return lhs, rhs


def closed_hom_count(ct: CharacterTable, *, orientable: bool, genus: int) -> int:
    """|Hom(pi_1(S), G)| for a closed surface, exactly in rational arithmetic.

    ``genus`` is gamma for orientable surfaces and the crosscap number k otherwise.
    """
    order = ct.order
    total = Fraction(0)
    iota = ct.fs.iota
    for a, d in enumerate(ct.dims):
        ratio = Fraction(order, int(d))
        if orientable:
            total += ratio ** (2 * genus - 2)
        else:
            total += iota[a] ** genus * ratio ** (genus - 2)
    total *= order
    if total.denominator != 1:
        raise RoundingError("closed-surface Hom count is not an integer")
    return int(total)


def regular_delta(ct: CharacterTable, x: int) -> int:
    """(1/|G|) sum_alpha d_alpha chi^alpha(x): 1 at the identity and 0 elsewhere."""
    val = (ct.dims * ct.on_elements[:, x]).sum() / ct.order
    return round_int(val, "regular delta")


@dataclass(eq=False)
class SubgroupTable:
    """A subgroup of a parent group together with its character table.

    ``on_parent[beta, g]`` is the character of irrep ``beta`` at parent
    element ``g`` (zero outside the subgroup).
    """

    elements: tuple[int, ...]
    group: FiniteGroup
    table: CharacterTable
    on_parent: np.ndarray
    iota: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dims(self) -> np.ndarray:
        return self.table.dims

    @property
    def num_irreps(self) -> int:
        return self.table.num_irreps


def subgroup_table(parent: FiniteGroup, elements: Sequence[int]) -> SubgroupTable:
    """Character data of a subgroup given as parent elements (cached on the parent)."""
    key = tuple(sorted(int(e) for e in elements))
    cache = parent.__dict__.setdefault("_subgroup_tables", {})
    hit = cache.get(key)
    if hit is not None:
        return hit
    sub = subgroup(parent, key)
    ct = character_table(sub)
    on_parent = np.zeros((ct.num_irreps, parent.order), dtype=complex)
    on_parent[:, list(key)] = ct.on_elements
    on_parent.setflags(write=False)
    st = SubgroupTable(key, sub, ct, on_parent, ct.fs.iota)
    cache[key] = st
    return st
