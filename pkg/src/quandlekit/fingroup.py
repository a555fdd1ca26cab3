"""Finite groups as explicit multiplication tables.

Tables are indexed by 0..n-1 and validated in full on construction (Latin
square plus associativity).  A small catalog of named groups is exposed via
a one-line spec grammar: atoms Z<n>, S<n>, D<n>, Q8 joined by "x" for direct
products, e.g. "Z2xZ4".
"""

from __future__ import annotations

import itertools
import re
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    NotAbelian,
    NotAHomomorphism,
    NotAutomorphism,
    ParseError,
    UnsupportedSpec,
)
from .perm import Perm, PermGroup
from .quandle import Quandle

DEFAULT_GROUP_CAP = 200

_ATOM_RE = re.compile(r"^([ZSD])(\d+)$")


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        n = len(table)
        self.table = tuple(tuple(row) for row in table)
        self.order = n
        if any(len(row) != n for row in self.table):
            raise ValueError("table is not square")
        for i, row in enumerate(self.table):
            if sorted(row) != list(range(n)):
                raise ValueError(f"row {i} is not a rearrangement")
        for j in range(n):
            if sorted(row[j] for row in self.table) != list(range(n)):
                raise ValueError(f"column {j} is not a rearrangement")
        self.identity = self._find_identity()
        for x in range(n):
            for y in range(n):
                row_xy = self.table[self.table[x][y]]
                ty = self.table[y]
                for z in range(n):
                    if row_xy[z] != self.table[x][ty[z]]:
                        raise ValueError(f"associativity fails at ({x}, {y}, {z})")
        self.inverses = tuple(self._find_inverse(x) for x in range(n))
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count mismatch")

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                return e
        raise ValueError("no identity element")

    def _find_inverse(self, x: int) -> int:
        for y in range(self.order):
            if self.table[x][y] == self.identity and self.table[y][x] == self.identity:
                return y
        raise ValueError(f"no inverse for {x}")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def power(group: FiniteGroup, x: int, k: int) -> int:
    """k-th power of x, with negative k meaning powers of the inverse."""
    if k < 0:
        x, k = group.inv(x), -k
    acc = group.identity
    for _ in range(k):
        acc = group.mul(acc, x)
    return acc


def element_order(group: FiniteGroup, x: int) -> int:
    k = 1
    acc = x
    while acc != group.identity:
        acc = group.mul(acc, x)
        k += 1
    return k


def exponent(group: FiniteGroup) -> int:
    result = 1
    for x in range(group.order):
        o = element_order(group, x)
        result = result * o // gcd(result, o)
    return result


def is_abelian(group: FiniteGroup) -> bool:
    return all(
        group.table[x][y] == group.table[y][x]
        for x in range(group.order)
        for y in range(x + 1, group.order)
    )


def center(group: FiniteGroup) -> list[int]:
    """Indices of elements commuting with everything, ascending."""
    return [
        x
        for x in range(group.order)
        if all(group.table[x][y] == group.table[y][x] for y in range(group.order))
    ]


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, labels=[str(i) for i in range(n)])


def symmetric_group_table(n: int) -> FiniteGroup:
    """S_n with elements in lexicographic one-line order; product is composition."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[k]] for k in range(n))] for q in perms]
        for p in perms
    ]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, labels=labels)


def quaternion_group() -> FiniteGroup:
    """The eight quaternion units 1, -1, i, -i, j, -j, k, -k in that order."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = {name: (1 if not name.startswith("-") else -1) for name in names}
    axis = {name: name.lstrip("-") for name in names}
    mul_axis = {
        ("1", "1"): ("1", 1),
        ("1", "i"): ("i", 1), ("i", "1"): ("i", 1),
        ("1", "j"): ("j", 1), ("j", "1"): ("j", 1),
        ("1", "k"): ("k", 1), ("k", "1"): ("k", 1),
        ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
        ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
        ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
        ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
    }
    index = {name: pos for pos, name in enumerate(names)}
    table = []
    for a in names:
        row = []
        for b in names:
            ax, s = mul_axis[(axis[a], axis[b])]
            s *= sign[a] * sign[b]
            name = ax if s == 1 else ("-1" if ax == "1" else "-" + ax)
            row.append(index[name])
        table.append(row)
    return FiniteGroup(table, labels=names)


def direct_product_group(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Pairs (x, y) ordered tuple-lexicographically: index = x * |b| + y."""
    n, m = a.order, b.order
    table = [
        [a.table[x1][x2] * m + b.table[y1][y2] for x2 in range(n) for y2 in range(m)]
        for x1 in range(n)
        for y1 in range(m)
    ]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [f"{a.labels[x]},{b.labels[y]}" for x in range(n) for y in range(m)]
    return FiniteGroup(table, labels=labels)


def semidirect(
    normal: FiniteGroup,
    acting: FiniteGroup,
    action: Sequence[Perm | Sequence[int]],
) -> FiniteGroup:
    """Semidirect product on pairs (n, h) with index n * |acting| + h.

    `action[h]` must be an automorphism of `normal` for each h, and h ->
    action[h] must be a homomorphism into Aut(normal) under composition.
    The product rule is (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 * h2).
    """
    if len(action) != acting.order:
        raise NotAHomomorphism("action must assign one map per acting element")
    maps = []
    for h, a in enumerate(action):
        p = a if isinstance(a, Perm) else Perm(a)
        if p.degree != normal.order:
            raise NotAHomomorphism(f"action[{h}] has wrong degree")
        for x in range(normal.order):
            for y in range(normal.order):
                if p(normal.table[x][y]) != normal.table[p(x)][p(y)]:
                    raise NotAutomorphism(f"action[{h}] does not preserve the table")
        maps.append(p)
    for h1 in range(acting.order):
        for h2 in range(acting.order):
            if maps[acting.table[h1][h2]] != maps[h1] * maps[h2]:
                raise NotAHomomorphism("action is not a homomorphism into Aut(N)")
    n, m = normal.order, acting.order
    table = [
        [normal.table[x1][maps[h1](x2)] * m + acting.table[h1][h2]
         for x2 in range(n) for h2 in range(m)]
        for x1 in range(n)
        for h1 in range(m)
    ]
    return FiniteGroup(table)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon as Z_n with an inverting flip adjoined."""
    zn = cyclic_group(n)
    inversion = Perm(tuple((-i) % n for i in range(n)))
    group = semidirect(zn, cyclic_group(2), [Perm.identity(n), inversion])
    labels = []
    for a in range(n):
        for f in range(2):
            labels.append(f"r{a}" if f == 0 else f"r{a}s")
    return FiniteGroup(group.table, labels=labels)


def _parse_atom(token: str, cap: int) -> FiniteGroup:
    if token == "Q8":
        return quaternion_group()
    match = _ATOM_RE.match(token)
    if not match:
        raise ParseError(f"bad group atom {token!r}")
    kind, digits = match.groups()
    n = int(digits)
    if kind == "Z":
        if n < 1:
            raise UnsupportedSpec("Z atoms need n >= 1")
        if n > cap:
            raise CapExceeded(f"Z{n} exceeds group cap {cap}")
        return cyclic_group(n)
    if kind == "S":
        if not 1 <= n <= 5:
            raise UnsupportedSpec("S atoms are built in only for n <= 5")
        return symmetric_group_table(n)
    if not 1 <= n <= 6:
        raise UnsupportedSpec("D atoms are built in only for n <= 6")
    return dihedral_group(n)


def make_group(spec: str, cap: int = DEFAULT_GROUP_CAP) -> FiniteGroup:
    """Build a catalog group from a spec like "Z4", "S3", "D4", "Q8" or "Z2xZ4"."""
    spec = spec.strip()
    if not spec:
        raise ParseError("empty group spec")
    atoms = [_parse_atom(token.strip(), cap) for token in spec.split("x")]
    group = atoms[0]
    for atom in atoms[1:]:
        if group.order * atom.order > cap:
            raise CapExceeded(f"product order exceeds group cap {cap}")
        group = direct_product_group(group, atom)
    if group.order > cap:
        raise CapExceeded(f"group order {group.order} exceeds cap {cap}")
    return group


def generating_sequence(group: FiniteGroup) -> list[int]:
    """A short generating list, grown greedily in index order."""
    gens: list[int] = []
    span = {group.identity}
    for x in range(group.order):
        if x not in span:
            gens.append(x)
            span = _spanned(group, gens)
            if len(span) == group.order:
                break
    return gens


def _spanned(group: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.table[g][x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _bfs_order(group: FiniteGroup, gens: Sequence[int]):
    """Breadth-first discovery order via left multiplication by generators."""
    order = [group.identity]
    parent: dict[int, tuple[int, int]] = {}
    seen = {group.identity}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for gi, g in enumerate(gens):
            y = group.table[g][x]
            if y not in seen:
                seen.add(y)
                parent[y] = (gi, x)
                order.append(y)
    return order, parent


def _image_maps(source: FiniteGroup, target: FiniteGroup, gens, bfs, candidates):
    """Yield every bijective homomorphism source -> target extending gens -> images."""
    order, parent = bfs
    n = source.order
    target_orders = [element_order(target, x) for x in range(target.order)]

    def build(images: list[int]):
        f = [-1] * n
        f[source.identity] = target.identity
        for y in order[1:]:
            gi, x = parent[y]
            f[y] = target.table[images[gi]][f[x]]
        if len(set(f)) != n:
            return None
        for gi, g in enumerate(gens):
            img = images[gi]
            for x in range(n):
                if f[source.table[g][x]] != target.table[img][f[x]]:
                    return None
        return f

    def rec(pos: int, chosen: list[int]):
        if pos == len(gens):
            f = build(chosen)
            if f is not None:
                yield f
            return
        want = element_order(source, gens[pos])
        for img in range(target.order):
            if target_orders[img] == want:
                yield from rec(pos + 1, chosen + [img])

    yield from rec(0, [])


def automorphism_group(group: FiniteGroup, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """All table automorphisms, as a permutation group on element indices."""
    if group.order > cap:
        raise CapExceeded(f"group order {group.order} exceeds cap {cap}")
    gens = generating_sequence(group)
    bfs = _bfs_order(group, gens)
    found = [Perm(f) for f in _image_maps(group, group, gens, bfs, None)]
    return PermGroup.from_elements(found, degree=group.order)


def find_isomorphism(a: FiniteGroup, b: FiniteGroup, cap: int = DEFAULT_GROUP_CAP) -> list[int] | None:
    """An index map realizing a == b, or None."""
    if a.order != b.order:
        return None
    if a.order > cap:
        raise CapExceeded(f"group order {a.order} exceeds cap {cap}")
    orders_a = sorted(element_order(a, x) for x in range(a.order))
    orders_b = sorted(element_order(b, x) for x in range(b.order))
    if orders_a != orders_b:
        return None
    gens = generating_sequence(a)
    bfs = _bfs_order(a, gens)
    for f in _image_maps(a, b, gens, bfs, None):
        return f
    return None


def is_isomorphic(a: FiniteGroup, b: FiniteGroup, cap: int = DEFAULT_GROUP_CAP) -> bool:
    return find_isomorphism(a, b, cap=cap) is not None


def from_permgroup(group: PermGroup) -> FiniteGroup:
    """Abstract multiplication table of a materialized permutation group."""
    index = {p: i for i, p in enumerate(group.elements)}
    table = [
        [index[p * q] for q in group.elements]
        for p in group.elements
    ]
    return FiniteGroup(table)


def conj_quandle(group: FiniteGroup, n: int = 1) -> Quandle:
    """Quandle on the group with x * y = y^-n x y^n; n = 0 gives the trivial one."""
    size = group.order
    table = []
    for x in range(size):
        row = []
        for y in range(size):
            p = power(group, y, n)
            row.append(group.mul(group.mul(group.inv(p), x), p))
        table.append(row)
    return Quandle.from_table(table, labels=group.labels)


def core_quandle(group: FiniteGroup) -> Quandle:
    """Quandle on the group with x * y = y x^-1 y; always involutory."""
    size = group.order
    table = [
        [group.mul(group.mul(y, group.inv(x)), y) for y in range(size)]
        for x in range(size)
    ]
    return Quandle.from_table(table, labels=group.labels)


def alexander_quandle(group: FiniteGroup, phi: Perm | Sequence[int]) -> Quandle:
    """Quandle on an abelian group with x * y = phi(x y^-1) y for an automorphism phi."""
    if not is_abelian(group):
        raise NotAbelian("the carrier group must be abelian")
    p = phi if isinstance(phi, Perm) else Perm(phi)
    if p.degree != group.order:
        raise NotAutomorphism("phi has the wrong degree")
    for x in range(group.order):
        for y in range(group.order):
            if p(group.table[x][y]) != group.table[p(x)][p(y)]:
                raise NotAutomorphism("phi does not preserve the group table")
    size = group.order
    table = [
        [group.mul(p(group.mul(x, group.inv(y))), y) for y in range(size)]
        for x in range(size)
    ]
    return Quandle.from_table(table, labels=group.labels)
