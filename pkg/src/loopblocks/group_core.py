"""Finite groups on dense element indices.

Elements are the integers ``0 .. |G|-1`` and index 0 is always the identity.
Everything else (conjugacy classes, centralizers, commuting tuples, Hom sets of
finitely presented groups) is derived from the Cayley table.
"""

from __future__ import annotations

import itertools
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._config import HOM_CAP, LIST_CAP, CapExceeded, cap

__all__ = [
    "BUILTIN_NAMES",
    "CommutingTuples",
    "ConjugacyData",
    "FiniteGroup",
    "GroupError",
    "GroupPresentation",
    "builtin",
    "centralizer_of_tuple",
    "commuting_tuples",
    "conjugacy",
    "conjugation_orbits",
    "count_homs",
    "direct_product",
    "enumerate_homs",
    "evaluate_word",
    "from_name",
    "load_group",
    "subgroup",
]

_ASSOC_EXHAUSTIVE = 64
_CHUNK_ROWS = 1 << 20


class GroupError(ValueError):
    """Invalid group data or parameters."""


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes with least-index representatives and their centralizers."""

    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    class_rep: tuple[int, ...]
    centralizer_of_rep: tuple[tuple[int, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes], dtype=np.int64)


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``cayley[a, b]`` is the index of ``a*b``. The table is validated on
    construction: identity law, Latin-square property and associativity
    (exhaustive up to order 64, sampled beyond).
    """

    def __init__(
        self,
        cayley: Sequence[Sequence[int]] | np.ndarray,
        *,
        name: str = "G",
        element_names: Sequence[str] | None = None,
        validate: bool = True,
    ) -> None:
        table = np.array(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("Cayley table must be a non-empty square matrix")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError("Cayley table entries must lie in 0..|G|-1")
        table.setflags(write=False)
        self.cayley = table
        self.order = n
        self.name = name
        if element_names is None:
            element_names = [str(i) for i in range(n)]
        if len(element_names) != n:
            raise GroupError("element_names has the wrong length")
        self.element_names = tuple(element_names)
        inverse = np.argmin(table != 0, axis=1)
        if not np.all(table[np.arange(n), inverse] == 0):
            raise GroupError("some element has no inverse")
        inverse.setflags(write=False)
        self.inverse = inverse
        if validate:
            self._validate()

    def _validate(self) -> None:
        t = self.cayley
        n = self.order
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupError("index 0 is not a two-sided identity")
        if not all(len(np.unique(row)) == n for row in t):
            raise GroupError("Cayley table rows are not permutations")
        if not all(len(np.unique(col)) == n for col in t.T):
            raise GroupError("Cayley table columns are not permutations")
        if n <= _ASSOC_EXHAUSTIVE:
            left = t[t]  # left[a, b, c] = (a*b)*c
            right = t[ar[:, None, None], t[None, :, :]]  # a*(b*c)
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        if not ok:
            raise GroupError("Cayley table is not associative")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, h: int) -> int:
        """Return ``h g h^-1``."""
        return int(self.cayley[self.cayley[h, g], self.inverse[h]])

    def product(self, elements: Iterable[int]) -> int:
        acc = 0
        for x in elements:
            acc = int(self.cayley[acc, x])
        return acc

    def power(self, g: int, q: int) -> int:
        return int(self.power_map(q)[g])

    def power_map(self, q: int) -> np.ndarray:
        """Vector ``g -> g^q`` for every element (negative ``q`` allowed)."""
        base = np.arange(self.order)
        if q < 0:
            base = self.inverse.copy()
            q = -q
        result = np.zeros(self.order, dtype=np.int64)
        while q:
            if q & 1:
                result = self.cayley[result, base]
            base = self.cayley[base, base]
            q >>= 1
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.cayley[x, g])
            k += 1
        return k

    def element_index(self, token: str | int) -> int:
        """Resolve an element name or index."""
        if isinstance(token, (int, np.integer)):
            idx = int(token)
        elif token in self.element_names:
            return self.element_names.index(token)
        else:
            try:
                idx = int(token)
            except ValueError as exc:
                raise GroupError(f"unknown element {token!r} in {self.name}") from exc
        if not 0 <= idx < self.order:
            raise GroupError(f"element index {idx} out of range for {self.name}")
        return idx

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    @cached_property
    def conjugation_table(self) -> np.ndarray:
        """``table[h, g] = h g h^-1``."""
        t = self.cayley
        tab = t[t, self.inverse[:, None]]
        tab.setflags(write=False)
        return tab

    @cached_property
    def commutes(self) -> np.ndarray:
        """Boolean matrix ``[a, b] -> a*b == b*a``."""
        m = self.cayley == self.cayley.T
        m.setflags(write=False)
        return m

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        return _compute_conjugacy(self)

    def centralizer(self, elements: Iterable[int]) -> tuple[int, ...]:
        return centralizer_of_tuple(self, tuple(elements))


def _compute_conjugacy(g: FiniteGroup) -> ConjugacyData:
    n = g.order
    conj = g.conjugation_table
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        members = tuple(sorted(set(int(v) for v in conj[:, x])))
        class_of[list(members)] = len(classes)
        classes.append(members)
    reps = tuple(c[0] for c in classes)
    cents = tuple(tuple(int(h) for h in np.flatnonzero(g.commutes[r])) for r in reps)
    class_of.setflags(write=False)
    return ConjugacyData(tuple(classes), class_of, reps, cents)


def conjugacy(g: FiniteGroup) -> ConjugacyData:
    """Conjugacy classes of ``g`` (cached on the group)."""
    return g.conjugacy


def centralizer_of_tuple(g: FiniteGroup, elements: Sequence[int]) -> tuple[int, ...]:
    """Sorted elements commuting with every entry of ``elements``."""
    mask = np.ones(g.order, dtype=bool)
    for x in elements:
        mask &= g.commutes[int(x)]
    return tuple(int(h) for h in np.flatnonzero(mask))


@dataclass(frozen=True)
class CommutingTuples:
    count: int
    tuples: list[tuple[int, ...]] | None


def commuting_tuples(
    g: FiniteGroup,
    m: int,
    within: Sequence[int] | None = None,
    *,
    want_list: bool = False,
) -> CommutingTuples:
    """Count (and optionally list) m-tuples of pairwise commuting elements.

    The count uses ``|Comm_m(H)| = sum_{h in H} |Comm_{m-1}(C_H(h))|``.
    """
    if m < 0:
        raise GroupError("m must be non-negative")
    pool = tuple(range(g.order)) if within is None else tuple(sorted(int(x) for x in within))
    count = _count_commuting(g, m, pool)
    if not want_list:
        return CommutingTuples(count, None)
    if count > cap(LIST_CAP):
        raise CapExceeded(f"{count} commuting tuples exceed the list cap")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], avail: np.ndarray) -> None:
        if len(prefix) == m:
            out.append(prefix)
            return
        for h in avail:
            rec(prefix + (int(h),), avail[g.commutes[h, avail]])

    rec((), np.array(pool, dtype=np.int64))
    return CommutingTuples(count, out)


def _count_commuting(g: FiniteGroup, m: int, pool: tuple[int, ...]) -> int:
    memo: dict[tuple[int, frozenset[int]], int] = {}
    comm = g.commutes

    def rec(k: int, avail: np.ndarray) -> int:
        if k == 0:
            return 1
        if k == 1:
            return len(avail)
        key = (k, frozenset(avail.tolist()))
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for h in avail:
            total += rec(k - 1, avail[comm[h, avail]])
        memo[key] = total
        return total

    return rec(m, np.array(pool, dtype=np.int64))


def subgroup(g: FiniteGroup, elements: Sequence[int], *, name: str | None = None) -> FiniteGroup:
    """Induced group on a sorted element subset containing the identity.

    The result carries ``parent_elements`` (local index -> parent index).
    """
    elems = sorted(set(int(x) for x in elements))
    if not elems or elems[0] != 0:
        raise GroupError("a subgroup must contain the identity")
    local = np.full(g.order, -1, dtype=np.int64)
    local[elems] = np.arange(len(elems))
    sub = g.cayley[np.ix_(elems, elems)]
    table = local[sub]
    if table.min() < 0:
        raise GroupError("element subset is not closed under multiplication")
    h = FiniteGroup(
        table,
        name=name or f"sub({g.name})",
        element_names=[g.element_names[e] for e in elems],
        validate=False,
    )
    h.parent_elements = tuple(elems)  # type: ignore[attr-defined]
    return h


def conjugation_orbits(g: FiniteGroup, tuples: np.ndarray) -> np.ndarray:
    """Canonical orbit representative of each row under simultaneous conjugation.

    Returns an integer array of orbit ids (ids are positions of the
    lexicographically least representatives in sorted order).
    """
    arr = np.asarray(tuples, dtype=np.int64)
    if arr.ndim != 2:
        raise GroupError("expected a 2-D array of tuples")
    if arr.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.shape[1] == 0:
        return np.zeros(arr.shape[0], dtype=np.int64)
    conj = g.conjugation_table
    n = g.order
    best = None
    for h in range(n):
        images = conj[h][arr]
        keys = _encode_rows(images, n)
        best = keys if best is None else np.minimum(best, keys)
    _, ids = np.unique(best, return_inverse=True)
    return ids.reshape(-1)


def _encode_rows(rows: np.ndarray, base: int) -> np.ndarray:
    """Injective encoding of small-integer rows into comparable scalars."""
    width = rows.shape[1]
    if width * np.log2(max(base, 2)) < 62:
        weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
        return rows @ weights
    return np.array([tuple(r) for r in rows.tolist()], dtype=object)


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation with optional boundary words.

    Words are sequences of signed, 1-based generator indices: ``2`` is the
    second generator and ``-2`` its inverse. A word evaluates to the
    left-to-right product of its letters.
    """

    num_generators: int
    relators: tuple[tuple[int, ...], ...] = ()
    boundary_words: tuple[tuple[int, ...], ...] | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.num_generators < 0:
            raise GroupError("num_generators must be non-negative")
        object.__setattr__(self, "relators", tuple(tuple(int(x) for x in w) for w in self.relators))
        if self.boundary_words is not None:
            object.__setattr__(
                self, "boundary_words", tuple(tuple(int(x) for x in w) for w in self.boundary_words)
            )
        for word in self.relators + (self.boundary_words or ()):
            for letter in word:
                if letter == 0 or abs(letter) > self.num_generators:
                    raise GroupError(f"word {word} references an undeclared generator")
        if self.names is not None and len(self.names) != self.num_generators:
            raise GroupError("names must match num_generators")

    def generator(self, name: str) -> int:
        """1-based index of a named generator."""
        if self.names is None:
            raise GroupError("presentation has no generator names")
        return self.names.index(name) + 1

    def to_json(self) -> dict:
        data: dict = {"generators": self.num_generators, "relators": [list(w) for w in self.relators]}
        if self.boundary_words is not None:
            data["boundary"] = [list(w) for w in self.boundary_words]
        if self.names is not None:
            data["names"] = list(self.names)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "GroupPresentation":
        bw = data.get("boundary")
        return cls(
            int(data["generators"]),
            tuple(tuple(w) for w in data.get("relators", [])),
            None if bw is None else tuple(tuple(w) for w in bw),
            None if data.get("names") is None else tuple(data["names"]),
        )


def evaluate_word(g: FiniteGroup, word: Sequence[int], assignment: np.ndarray | Sequence[int]) -> np.ndarray | int:
    """Evaluate ``word`` on one assignment (1-D) or many (rows of a 2-D array)."""
    arr = np.asarray(assignment, dtype=np.int64)
    single = arr.ndim == 1
    rows = arr[None, :] if single else arr
    acc = np.zeros(rows.shape[0], dtype=np.int64)
    for letter in word:
        x = rows[:, abs(letter) - 1]
        if letter < 0:
            x = g.inverse[x]
        acc = g.cayley[acc, x]
    return int(acc[0]) if single else acc


def _levels(pres: GroupPresentation) -> list[list[tuple[int, ...]]]:
    """Relators grouped by the last generator (0-based) they mention."""
    levels: list[list[tuple[int, ...]]] = [[] for _ in range(max(pres.num_generators, 1))]
    for word in pres.relators:
        if not word:
            continue
        levels[max(abs(x) for x in word) - 1].append(word)
    return levels


def enumerate_homs(
    g: FiniteGroup,
    pres: GroupPresentation,
    *,
    fixed: Mapping[int, int] | None = None,
    threads: int = 1,
) -> np.ndarray:
    """All generator assignments satisfying every relator, in lexicographic order.

    ``fixed`` maps 0-based generator indices to forced values; only the
    remaining generators are searched. The search is depth first over
    generators, checking each relator as soon as its last generator is set.
    Returns an array of shape ``(num_solutions, num_generators)``.
    """
    fixed = dict(fixed or {})
    for k, v in fixed.items():
        if not 0 <= k < pres.num_generators:
            raise GroupError(f"fixed generator {k} out of range")
        if not 0 <= v < g.order:
            raise GroupError(f"fixed value {v} out of range")
    ngen = pres.num_generators
    free = ngen - len(fixed)
    limit = cap(HOM_CAP)
    if g.order**free > limit:
        raise CapExceeded(f"|G|^{free} = {g.order**free} assignments exceed the cap {limit}")
    levels = _levels(pres)
    if ngen == 0:
        ok = all(evaluate_word(g, w, np.zeros(0, dtype=np.int64)) == 0 for w in pres.relators)
        return np.zeros((1 if ok else 0, 0), dtype=np.int64)

    def choices(k: int) -> np.ndarray:
        if k in fixed:
            return np.array([fixed[k]], dtype=np.int64)
        return np.arange(g.order, dtype=np.int64)

    def extend(frontier: np.ndarray, out: list[np.ndarray]) -> None:
        k = frontier.shape[1]
        if k == ngen:
            out.append(frontier)
            return
        vals = choices(k)
        step = max(1, _CHUNK_ROWS // len(vals))
        for start in range(0, frontier.shape[0], step):
            part = frontier[start : start + step]
            new = np.empty((part.shape[0] * len(vals), k + 1), dtype=np.int64)
            new[:, :k] = np.repeat(part, len(vals), axis=0)
            new[:, k] = np.tile(vals, part.shape[0])
            for word in levels[k]:
                new = new[evaluate_word(g, word, new) == 0]
                if new.shape[0] == 0:
                    break
            if new.shape[0]:
                extend(new, out)

    roots = [np.array([[v]], dtype=np.int64) for v in choices(0)]

    def run(root: np.ndarray) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        for word in levels[0]:
            if evaluate_word(g, word, root)[0] != 0:
                return out
        extend(root, out)
        return out

    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, roots))
    else:
        parts = [run(r) for r in roots]
    pieces = [p for part in parts for p in part]
    if not pieces:
        return np.zeros((0, ngen), dtype=np.int64)
    return np.concatenate(pieces, axis=0)


def count_homs(g: FiniteGroup, pres: GroupPresentation, *, fixed: Mapping[int, int] | None = None) -> int:
    return int(enumerate_homs(g, pres, fixed=fixed).shape[0])


# ---------------------------------------------------------------- built-in groups


def _dihedral(order: int) -> FiniteGroup:
    if order < 2 or order % 2:
        raise GroupError("dihedral order must be even and at least 2")
    m = order // 2
    # element f*m + k stands for s^f r^k
    elems = [(f, k) for f in range(2) for k in range(m)]
    index = {e: i for i, e in enumerate(elems)}
    table = np.zeros((order, order), dtype=np.int64)
    for (f1, k1), i in index.items():
        for (f2, k2), j in index.items():
            sign = -1 if f2 else 1
            table[i, j] = index[((f1 + f2) % 2, (sign * k1 + k2) % m)]

    def name(f: int, k: int) -> str:
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        s = "s" if f else ""
        return (s + r) or "1"

    return FiniteGroup(table, name=f"D{order}", element_names=[name(*e) for e in elems])


def _dicyclic(order: int) -> FiniteGroup:
    if order < 8 or order % 4:
        raise GroupError("dicyclic order must be a multiple of 4, at least 8")
    m = order // 4
    n2 = 2 * m
    # element f*2m + k stands for a^k x^f, with x^2 = a^m and x a x^-1 = a^-1
    elems = [(f, k) for f in range(2) for k in range(n2)]
    index = {e: i for i, e in enumerate(elems)}
    table = np.zeros((order, order), dtype=np.int64)
    for (f1, k1), i in index.items():
        for (f2, k2), j in index.items():
            k = k1 + (-k2 if f1 else k2)
            f = f1 + f2
            if f == 2:
                f, k = 0, k + m
            table[i, j] = index[(f, k % n2)]

    def name(f: int, k: int) -> str:
        a = "" if k == 0 else ("a" if k == 1 else f"a{k}")
        return (a + ("x" if f else "")) or "1"

    return FiniteGroup(table, name=f"Q{order}", element_names=[name(*e) for e in elems])


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "1"


def _from_permutations(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(len(p)))]
    return FiniteGroup(table, name=name, element_names=[_cycle_name(p) for p in perms])


def _parity(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def _symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise GroupError("symmetric groups are available for 1 <= n <= 4")
    return _from_permutations(list(itertools.permutations(range(n))), f"S{n}")


def _alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise GroupError("alternating groups are available for 1 <= n <= 4")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _from_permutations(perms, f"A{n}")


def _special_linear_2(p: int) -> FiniteGroup:
    if p not in (2, 3):
        raise GroupError("SL(2,p) is available for p in {2, 3}")
    gens = [((1, 1), (0, 1)), ((1, 0), (1, 1))]

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
        )

    ident = ((1, 0), (0, 1))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    elems = [ident] + sorted(e for e in elems if e != ident)
    index = {e: i for i, e in enumerate(elems)}
    table = np.array([[index[mul(a, b)] for b in elems] for a in elems], dtype=np.int64)
    names = ["[" + ",".join(str(v) for row in e for v in row) + "]" for e in elems]
    names[0] = "1"
    return FiniteGroup(table, name=f"SL2_{p}", element_names=names)


def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product with element ``i*|b| + j`` standing for ``(i, j)``."""
    nb = b.order
    table = (a.cayley[:, None, :, None] * nb + b.cayley[None, :, None, :]).reshape(a.order * nb, a.order * nb)
    names = [f"({x},{y})" for x in a.element_names for y in b.element_names]
    names[0] = "1"
    return FiniteGroup(table, name=f"{a.name}x{b.name}", element_names=names)


_FAMILIES = {
    "Z": _cyclic,
    "D": _dihedral,
    "Q": _dicyclic,
    "S": _symmetric,
    "A": _alternating,
    "SL": _special_linear_2,
}


@lru_cache(maxsize=None)
def builtin(family: str, *params: int) -> FiniteGroup:
    """Built-in group families.

    ``Z n`` cyclic, ``D 2m`` dihedral of order 2m (``D 6`` has elements
    1, r, r2, s, sr, sr2), ``Q 4m`` dicyclic (``Q 8`` quaternion), ``S n`` and
    ``A n`` for n <= 4, ``SL 3`` for SL(2,3). Products are built with
    :func:`from_name` (``"Z2xS3"``) or :func:`direct_product`.
    """
    fam = family.upper()
    if fam not in _FAMILIES:
        raise GroupError(f"unknown group family {family!r}")
    if len(params) != 1:
        raise GroupError(f"family {family!r} takes one integer parameter")
    return _FAMILIES[fam](int(params[0]))


_NAME_RE = re.compile(r"^(SL|Z|D|Q|S|A)(\d+)$", re.IGNORECASE)


@lru_cache(maxsize=None)
def from_name(name: str) -> FiniteGroup:
    """Parse names such as ``D6``, ``Q8``, ``SL3`` or ``Z2xZ2xS3``."""
    parts = [p for p in re.split(r"[x×]", name.strip()) if p]
    if not parts:
        raise GroupError(f"cannot parse group name {name!r}")
    groups = []
    for part in parts:
        m = _NAME_RE.match(part)
        if not m:
            raise GroupError(f"cannot parse group name {part!r}")
        groups.append(builtin(m.group(1).upper(), int(m.group(2))))
    result = groups[0]
    for other in groups[1:]:
        result = direct_product(result, other)
    if len(groups) > 1:
        result.name = name
    return result


def load_group(spec: str) -> FiniteGroup:
    """Resolve a CLI group argument: a built-in name or ``file:<path>`` JSON."""
    if spec.startswith("file:"):
        data = json.loads(Path(spec[5:]).read_text())
        if "cayley" in data:
            table = data["cayley"]
            if "order" in data and int(data["order"]) != len(table):
                raise GroupError("declared order does not match the Cayley table")
            return FiniteGroup(table, name=data.get("name", Path(spec[5:]).stem), element_names=data.get("names"))
        if "family" in data:
            return builtin(str(data["family"]), int(data["param"]))
        raise GroupError("group file needs 'cayley' or 'family'")
    return from_name(spec)


BUILTIN_NAMES: tuple[str, ...] = (
    "Z1",
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z6",
    "Z2xZ2",
    "D6",
    "S3",
    "D8",
    "Q8",
    "Z2xZ2xZ2",
    "Z3xZ3",
    "D10",
    "D12",
    "Q12",
    "A4",
    "D16",
    "Z3xS3",
    "S4",
    "SL3",
)
