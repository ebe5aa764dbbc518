"""Coset gluing: exact glue-vector arithmetic, glue-group enumeration, and
generator synthesis for the glued lattice.

Glue vectors are coset representatives of dual-quotient classes, held as exact
rationals in the coordinates of the base lattice and canonicalized into [0,1)
per coordinate, which makes set equality of groups well defined.  Gluing a
group onto its base is exact integer linear algebra: stack the coordinate rows
over the identity, clear denominators, reduce to a Hermite normal form, and
map the surviving rows back through the base generator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import catalog
from .core import Lattice, coordinates, make_lattice
from .errors import (
    BaseMismatch,
    InvalidSymmetry,
    NotAGroup,
    SnapError,
    TooManyWords,
    UnsupportedLattice,
)

SNAP_TOL = 1e-9
DEFAULT_WORD_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class GlueVector:
    """Canonical coset representative: exact coordinates in [0,1) per entry."""

    coords: tuple[Fraction, ...]
    ambient: np.ndarray
    denominator: int
    base: Lattice
    label: str | None = None

    def __eq__(self, other):
        return isinstance(other, GlueVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"GlueVector({self.label or ','.join(map(str, self.coords))})"

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def from_coords(base: Lattice, coords, label: str | None = None) -> GlueVector:
    """Build a glue vector from exact basis coordinates, reducing them modulo 1."""
    canon = tuple(Fraction(c) % 1 for c in coords)
    if len(canon) != base.dimension:
        raise BaseMismatch(f"{len(canon)} coordinates for a {base.dimension}-dimensional base")
    den = 1
    for c in canon:
        den = math.lcm(den, c.denominator)
    ambient = np.array([float(c) for c in canon]) @ base.basis
    ambient.setflags(write=False)
    return GlueVector(coords=canon, ambient=ambient, denominator=den, base=base, label=label)


def from_ambient(base: Lattice, ambient, label: str | None = None) -> GlueVector:
    """Snap an ambient dual-quotient representative to exact rational coordinates.

    Admissible denominators divide det(gram) of the base; a snap error of
    1e-9 or more aborts the construction.
    """
    u, resid = coordinates(base, ambient)
    if resid >= SNAP_TOL:
        raise SnapError(f"representative off the base span, residual {resid:.3e}")
    den = round(base.det_gram)
    if den < 1 or abs(base.det_gram - den) > 1e-6:
        raise UnsupportedLattice(f"base determinant {base.det_gram!r} is not a positive integer")
    coords = []
    for v in u:
        c = Fraction(round(v * den), den)
        if abs(v - float(c)) >= SNAP_TOL:
            raise SnapError(f"coordinate {v!r} is not a multiple of 1/{den} within 1e-9")
        coords.append(c)
    return from_coords(base, coords, label=label)


def standard_glue_vectors(name: str) -> list[GlueVector]:
    """The published glue vectors of a catalog lattice, canonicalized."""
    entry = catalog.get(name)
    if entry.glue_ambient is None:
        raise UnsupportedLattice(f"no built-in glue vectors for {name}")
    return [
        from_ambient(entry.lattice, g, label=f"g{i}")
        for i, g in enumerate(entry.glue_ambient)
    ]


def _check_base(vec: GlueVector, base: Lattice) -> None:
    if vec.base is not base and not np.array_equal(vec.base.basis, base.basis):
        raise BaseMismatch("glue vectors belong to a different base lattice")


def add_mod_lattice(a: GlueVector, b: GlueVector, base: Lattice) -> GlueVector:
    """Exact coset addition, reduced modulo the base lattice."""
    _check_base(a, base)
    _check_base(b, base)
    return from_coords(base, tuple(x + y for x, y in zip(a.coords, b.coords)))


def is_group(base: Lattice, subset) -> bool:
    """Whether a glue set containing zero is closed under addition modulo the base."""
    elems = set(subset)
    for a, b in itertools.combinations_with_replacement(list(elems), 2):
        if add_mod_lattice(a, b, base) not in elems:
            return False
    return True


@dataclass(frozen=True, eq=False)
class GlueGroup:
    """A finite set of glue vectors closed under addition modulo the base."""

    base: Lattice
    elements: tuple[GlueVector, ...]   # zero first, then by word index / coordinates
    word_indices: tuple[int, ...] | None = None
    words: tuple[GlueVector, ...] | None = None
    component_dims: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def labels(self) -> list[str]:
        return [g.label or str(g.coords) for g in self.elements]

    def __repr__(self):
        return f"GlueGroup({{{','.join(self.labels())}}})"


def glue_words(base: Lattice, component_glues) -> list[GlueVector]:
    """Concatenated component glue vectors of a product base, in row-major order."""
    dims = [gs[0].base.dimension for gs in component_glues]
    if sum(dims) != base.dimension:
        raise BaseMismatch("component dimensions do not sum to the base dimension")
    out = []
    for combo in itertools.product(*component_glues):
        coords = tuple(c for g in combo for c in g.coords)
        label = "g" + "".join((g.label or "?").lstrip("g") for g in combo)
        out.append(from_coords(base, coords, label=label))
    return out


def _closure(seed: frozenset[int], table) -> frozenset[int]:
    members = {0} | set(seed)
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            c = table[a][b]
            if c not in members:
                members.add(c)
                frontier.append(c)
    return frozenset(members)


def enumerate_glue_groups(
    base: Lattice,
    component_glues,
    limit: int = DEFAULT_WORD_LIMIT,
) -> list[GlueGroup]:
    """Every subset of the glue words that contains zero and is a group.

    Deterministic order: by group order, then lexicographically on the sorted
    word indices.  Groups are found by closing every generator subset of size
    up to log2(word count), which covers all subgroups of a finite abelian
    group.
    """
    words = glue_words(base, component_glues)
    k = len(words)
    if k > limit:
        raise TooManyWords(f"{k} glue words exceeds the limit {limit}")
    if not words[0].is_zero:
        raise NotAGroup("glue word 0 must be the zero vector")
    index_of = {w.coords: i for i, w in enumerate(words)}
    table = [
        [index_of[add_mod_lattice(a, b, base).coords] for b in words]
        for a in words
    ]
    max_gens = max(k.bit_length() - 1, 0)
    found: set[frozenset[int]] = set()
    nonzero = range(1, k)
    for size in range(max_gens + 1):
        for gens in itertools.combinations(nonzero, size):
            found.add(_closure(frozenset(gens), table))
    dims = tuple(gs[0].base.dimension for gs in component_glues)
    groups = []
    for idxset in sorted(found, key=lambda s: (len(s), sorted(s))):
        idx = tuple(sorted(idxset))
        groups.append(
            GlueGroup(
                base=base,
                elements=tuple(words[i] for i in idx),
                word_indices=idx,
                words=tuple(words),
                component_dims=dims,
            )
        )
    return groups


def _permutation_closure(perms: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    identity = tuple(range(k))
    group = {identity}
    frontier = [identity]
    gens = [tuple(p) for p in perms]
    while frontier:
        q = frontier.pop()
        for p in gens:
            comp = tuple(p[q[i]] for i in range(k))
            if comp not in group:
                group.add(comp)
                frontier.append(comp)
    return sorted(group)


def reduce_by_symmetry(groups, symmetries) -> list[GlueGroup]:
    """One representative per orbit of the given word-index permutations.

    The representative is the lexicographically least orbit member.  Raises
    InvalidSymmetry if any permutation maps some group to a non-group.
    """
    groups = list(groups)
    if not symmetries or not groups:
        return groups
    first = groups[0]
    if first.words is None or first.word_indices is None:
        raise ValueError("groups must carry word metadata from enumerate_glue_groups")
    words = first.words
    k = len(words)
    for p in symmetries:
        if sorted(p) != list(range(k)):
            raise InvalidSymmetry(f"not a permutation of {k} glue words: {p}")
    perm_group = _permutation_closure([tuple(p) for p in symmetries], k)
    base = first.base
    dims = first.component_dims

    seen: set[frozenset[int]] = set()
    out = []
    for g in groups:
        start = frozenset(g.word_indices)
        orbit = set()
        for q in perm_group:
            image = frozenset(q[i] for i in start)
            if image not in orbit:
                if not is_group(base, [words[i] for i in image]):
                    raise InvalidSymmetry(f"permutation image {sorted(image)} is not a group")
                orbit.add(image)
        rep = min((tuple(sorted(m)) for m in orbit))
        key = frozenset(rep)
        if key in seen:
            continue
        seen.add(key)
        out.append(
            GlueGroup(
                base=base,
                elements=tuple(words[i] for i in rep),
                word_indices=rep,
                words=words,
                component_dims=dims,
            )
        )
    out.sort(key=lambda g: (g.order, g.word_indices))
    return out


def is_product_group(group: GlueGroup) -> bool:
    """Whether the group is a direct product of its two component projections."""
    dims = group.component_dims
    if dims is None or len(dims) != 2:
        raise ValueError("group was not built over a two-component product base")
    n1 = dims[0]
    left = {g.coords[:n1] for g in group.elements}
    right = {g.coords[n1:] for g in group.elements}
    return len(left) * len(right) == group.order


@dataclass(frozen=True, eq=False)
class GluedLattice:
    """Union of base-lattice translates by a glue group, as a lattice."""

    result: Lattice
    source: GlueGroup


def hnf_rows(rows) -> list[list[int]]:
    """Row Hermite normal form over the integers; returns the nonzero rows."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    k, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == k:
            break
        while True:
            piv, best = -1, 0
            for i in range(r, k):
                v = abs(a[i][c])
                if v and (piv < 0 or v < best):
                    piv, best = i, v
            if piv < 0:
                break
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
            clean = True
            for i in range(r + 1, k):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:r]


def glued_generator(group: GlueGroup) -> GluedLattice:
    """Generator matrix of the union of base translates by the group.

    Stacks the identity over the exact coordinate rows of all elements, scales
    by the group exponent to reach integers, reduces to Hermite normal form,
    and maps the surviving rows back through the base generator.
    """
    base = group.base
    if not is_group(base, group.elements):
        raise NotAGroup("glue set is not closed under addition modulo the base")
    n = base.dimension
    s = 1
    for g in group.elements:
        s = math.lcm(s, g.denominator)
    rows = [[s if i == j else 0 for j in range(n)] for i in range(n)]
    for g in group.elements:
        rows.append([int(c * s) for c in g.coords])
    h = hnf_rows(rows)
    if len(h) != n:
        raise NotAGroup(f"synthesis produced rank {len(h)}, expected {n}")
    result_basis = (np.array(h, dtype=float) @ base.basis) / s
    label = ",".join(group.labels())
    result = make_lattice(result_basis, name=f"glued({base.name or '?'};{label})")
    return GluedLattice(result=result, source=group)


def builtin_symmetries(base_name: str) -> list[tuple[int, ...]]:
    """Word-index symmetries used by the survey pipelines.

    For D6xD6 these are: (i) swap the two component blocks, (ii) exchange
    component cosets 1 and 3 on the left, (iii) the same on the right.
    E6xE6 surveys apply no reduction.
    """
    if base_name == "E6xE6":
        return []
    if base_name == "D6xD6":
        k2 = 4
        swap = tuple((idx % k2) * k2 + idx // k2 for idx in range(16))
        x13 = {0: 0, 1: 3, 2: 2, 3: 1}
        left = tuple(x13[idx // k2] * k2 + idx % k2 for idx in range(16))
        right = tuple((idx // k2) * k2 + x13[idx % k2] for idx in range(16))
        return [swap, left, right]
    raise UnsupportedLattice(base_name)


def group_to_json(group: GlueGroup) -> dict:
    """JSON form: base name plus element coordinates as rational strings."""
    return {
        "schema_version": 1,
        "base": group.base.name,
        "elements": [[str(c) for c in g.coords] for g in group.elements],
    }


def group_from_json(data: dict, base: Lattice | None = None) -> GlueGroup:
    if base is None:
        base = catalog.resolve_spec(data["base"])
    elements = tuple(
        from_coords(base, [Fraction(s) for s in coords]) for coords in data["elements"]
    )
    return GlueGroup(base=base, elements=elements)
