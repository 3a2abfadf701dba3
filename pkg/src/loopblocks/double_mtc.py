"""Modular S data of the Drinfeld double D(G).

Anyons are pairs (c, alpha) with c a canonical conjugacy-class representative
and alpha an irrep of the centralizer C_c. The vacuum is (1, trivial).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .group_core import FiniteGroup
from .rep_theory import CharacterTable, RoundingError, SubgroupTable, round_int, subgroup_table

__all__ = [
    "APPENDIX",
    "MAIN",
    "AnyonLabel",
    "SMatrix",
    "anyons",
    "centralizer_table",
    "conjugate_irrep_anyon",
    "fusion",
    "fusion_tensor",
    "parse_anyon",
    "quantum_dim",
    "s_column",
    "s_entry",
    "s_matrix",
    "total_dim",
    "twisted_pairing",
]

MAIN = "main"
APPENDIX = "appendix"


@dataclass(frozen=True, order=True)
class AnyonLabel:
    """Anyon (c, alpha): ``class_rep`` is an element index, ``irrep`` indexes Rep(C_c)."""

    class_rep: int
    irrep: int

    def name(self, group: FiniteGroup) -> str:
        names = group.element_names
        tok = names[self.class_rep] if names is not None else str(self.class_rep)
        return f"[{tok}]:{self.irrep}"


def centralizer_table(group: FiniteGroup, element: int) -> SubgroupTable:
    return subgroup_table(group, group.centralizer([element]))


def anyons(ct: CharacterTable) -> list[AnyonLabel]:
    """All anyons, vacuum first, then by (class index, irrep index)."""
    g = ct.group
    out = []
    for rep in g.conjugacy.class_rep:
        st = centralizer_table(g, int(rep))
        out.extend(AnyonLabel(int(rep), b) for b in range(st.num_irreps))
    return out


def quantum_dim(ct: CharacterTable, a: AnyonLabel) -> int:
    g = ct.group
    size = int(ct.class_sizes[g.conjugacy.class_of[a.class_rep]])
    return size * int(centralizer_table(g, a.class_rep).dims[a.irrep])


def total_dim(ct: CharacterTable) -> float:
    return math.sqrt(sum(quantum_dim(ct, a) ** 2 for a in anyons(ct)))


def _pair_block(group: FiniteGroup, g: int, tg: SubgroupTable, c: int, tc: SubgroupTable, conjugate: bool) -> np.ndarray:
    """All S entries between anyons over g and anyons over c (rows: Rep(C_g), cols: Rep(C_c))."""
    ctab = group.conjugation_table
    h = np.arange(group.order)
    u = ctab[group.inverse[h], g]  # h^-1 g h
    v = ctab[h, c]  # h c h^-1
    member = np.zeros(group.order, dtype=bool)
    member[list(tc.elements)] = True
    mask = member[u]
    chi_b = tg.on_parent[:, v[mask]]
    chi_a = tc.on_parent[:, u[mask]]
    if conjugate:
        chi_b, chi_a = np.conj(chi_b), np.conj(chi_a)
    return (chi_b @ chi_a.T) / (tg.order * tc.order)


def s_entry(ct: CharacterTable, g: int, beta: int, c: int, alpha: int, *, convention: str = APPENDIX) -> complex:
    """S_{(g,beta),(c,alpha)} for arbitrary elements g and c.

    ``beta`` and ``alpha`` index irreps of C_g and C_c; non-canonical elements
    are allowed and use their own centralizer tables.
    """
    grp = ct.group
    blk = _pair_block(grp, g, centralizer_table(grp, g), c, centralizer_table(grp, c), convention == APPENDIX)
    return complex(blk[beta, alpha])


def s_column(ct: CharacterTable, c: int, alpha: int, *, convention: str = APPENDIX) -> np.ndarray:
    """Column S_{x,(c,alpha)} over all canonical anyons x, for any element c."""
    cache = ct.__dict__.setdefault("_s_columns", {})
    key = (int(c), convention)
    cols = cache.get(key)
    if cols is None:
        grp = ct.group
        tc = centralizer_table(grp, c)
        parts = [
            _pair_block(grp, int(rep), centralizer_table(grp, int(rep)), c, tc, convention == APPENDIX)
            for rep in grp.conjugacy.class_rep
        ]
        cols = np.concatenate(parts, axis=0)
        cols.setflags(write=False)
        cache[key] = cols
    return cols[:, alpha]


@dataclass(eq=False)
class SMatrix:
    ct: CharacterTable
    anyons: list[AnyonLabel]
    entries: np.ndarray
    convention: str

    @cached_property
    def index(self) -> dict[AnyonLabel, int]:
        return {a: i for i, a in enumerate(self.anyons)}

    def __getitem__(self, key: tuple[AnyonLabel, AnyonLabel]) -> complex:
        a, b = key
        return complex(self.entries[self.index[a], self.index[b]])

    @cached_property
    def charge_conjugation(self) -> np.ndarray:
        """Permutation p with S^2 sending anyon i to anyon p[i]."""
        s2 = self.entries @ self.entries
        perm = np.argmax(np.abs(s2), axis=1)
        if not np.allclose(s2, np.eye(len(perm))[perm], atol=1e-8):
            raise RoundingError("S^2 is not a permutation matrix")
        return perm

    @cached_property
    def iota(self) -> np.ndarray:
        """Frobenius-Schur indicator of each anyon's centralizer irrep."""
        g = self.ct.group
        return np.array([centralizer_table(g, a.class_rep).iota[a.irrep] for a in self.anyons], dtype=float)

    def dual(self, a: AnyonLabel) -> AnyonLabel:
        return self.anyons[int(self.charge_conjugation[self.index[a]])]

    def vacuum_column(self) -> np.ndarray:
        return self.entries[:, 0]

    def to_json(self) -> dict:
        g = self.ct.group
        return {
            "convention": self.convention,
            "anyons": [a.name(g) for a in self.anyons],
            "real": self.entries.real.tolist(),
            "imag": self.entries.imag.tolist(),
        }


def s_matrix(ct: CharacterTable, *, convention: str = APPENDIX) -> SMatrix:
    """Modular S matrix of D(G), cached per convention on the table."""
    if convention not in (MAIN, APPENDIX):
        raise ValueError(f"unknown convention {convention!r}")
    cache = ct.__dict__.setdefault("_s_matrices", {})
    if convention in cache:
        return cache[convention]
    g = ct.group
    reps = [int(r) for r in g.conjugacy.class_rep]
    tables = [centralizer_table(g, r) for r in reps]
    offsets = np.cumsum([0] + [t.num_irreps for t in tables])
    total = int(offsets[-1])
    entries = np.zeros((total, total), dtype=complex)
    for i, (gi, ti) in enumerate(zip(reps, tables)):
        for j, (cj, tj) in enumerate(zip(reps, tables)):
            entries[offsets[i] : offsets[i + 1], offsets[j] : offsets[j + 1]] = _pair_block(
                g, gi, ti, cj, tj, convention == APPENDIX
            )
    sm = SMatrix(ct, anyons(ct), entries, convention)
    cache[convention] = sm
    return sm


def fusion(ct: CharacterTable, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel, *, convention: str = APPENDIX) -> int:
    """Verlinde coefficient N_{ab}^c = sum_x S_xa S_xb conj(S_xc) / S_x,vac."""
    sm = s_matrix(ct, convention=convention)
    ia, ib, ic = sm.index[a], sm.index[b], sm.index[c]
    s = sm.entries
    val = np.sum(s[:, ia] * s[:, ib] * np.conj(s[:, ic]) / s[:, 0])
    out = round_int(val, "fusion coefficient")
    if out < 0:
        raise RoundingError("negative fusion coefficient")
    return out


def fusion_tensor(ct: CharacterTable, *, convention: str = APPENDIX) -> np.ndarray:
    """All Verlinde coefficients at once: N[a, b, c] = N_{ab}^c, anyons in s_matrix order."""
    cache = ct.__dict__.setdefault("_fusion_tensors", {})
    if convention in cache:
        return cache[convention]
    s = s_matrix(ct, convention=convention).entries
    vals = np.einsum("xa,xb,xc,x->abc", s, s, np.conj(s), 1.0 / s[:, 0])
    out = np.rint(vals.real).astype(np.int64)
    if np.abs(vals - out).max(initial=0.0) > 1e-6 or (out < 0).any():
        raise RoundingError("fusion tensor is not a nonnegative integer array")
    out.setflags(write=False)
    cache[convention] = out
    return out


def parse_anyon(group: FiniteGroup, text: str) -> AnyonLabel:
    """Parse ``[r]:1`` (element name or index in brackets, irrep index after the colon).

    The element may be any member of its class; it is replaced by the
    canonical representative, and the irrep index refers to the centralizer of
    that representative.
    """
    text = text.strip()
    if not (text.startswith("[") and "]:" in text):
        raise ValueError(f"anyon must look like '[g]:i', got {text!r}")
    elem_txt, irrep_txt = text[1:].split("]:", 1)
    elem = group.element_index(elem_txt.strip())
    rep = int(group.conjugacy.class_rep[group.conjugacy.class_of[elem]])
    irrep = int(irrep_txt)
    n = centralizer_table(group, rep).num_irreps
    if not 0 <= irrep < n:
        raise ValueError(f"irrep index {irrep} out of range for centralizer with {n} irreps")
    return AnyonLabel(rep, irrep)


def conjugate_irrep_anyon(ct: CharacterTable, a: AnyonLabel) -> AnyonLabel:
    """(c, alpha-bar): same flux, complex-conjugate centralizer irrep."""
    tg = centralizer_table(ct.group, a.class_rep)
    target = np.conj(tg.on_parent[a.irrep])
    for b in range(tg.num_irreps):
        if np.allclose(tg.on_parent[b], target, atol=1e-9):
            return AnyonLabel(a.class_rep, b)
    raise RoundingError("conjugate centralizer character not found")


def twisted_pairing(ct: CharacterTable, *, convention: str = APPENDIX) -> np.ndarray:
    """M[a, b] = sum_{(c, chi)} S_{a,(c,chi)} conj(S_{b,(c^-1,chi)}) over all anyons (c, chi).

    chi indexes Rep(C_c), which is also Rep(C_{c^-1}) since the centralizers agree.
    """
    sm = s_matrix(ct, convention=convention)
    inv = ct.group.inverse
    t = np.array([s_column(ct, int(inv[x.class_rep]), x.irrep, convention=convention) for x in sm.anyons]).T
    return sm.entries @ t.conj().T
