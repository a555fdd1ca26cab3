"""Enveloping groups of quandles.

A quandle embeds its structure into a finitely presented group with one
generator per element and one conjugation relator per ordered pair.  This
module builds those presentations and answers the questions about them that
stay decidable: abelianization through an exact Smith normal form,
commutator-subgroup generators, coset enumeration (Todd-Coxeter), and
relator checks for maps into concrete groups.

Everything runs on exact integers.  Python integers are unbounded, so the
overflow failure mode that plagues fixed-width Smith normal form code cannot
occur here; certificates are still re-verified after every computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import CosetLimitExceeded
from .perm import Perm
from .quandle import Quandle

# A word is a tuple of (generator, sign) letters with sign +1 or -1.
Word = tuple


def free_reduce(word: Sequence[tuple[int, int]]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[tuple[int, int]] = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def word_inverse(word: Sequence[tuple[int, int]]) -> Word:
    return tuple((g, -s) for g, s in reversed(word))


def word_to_json(word: Sequence[tuple[int, int]]) -> list[int]:
    """Encode as 1-based signed integers, the on-disk word format."""
    return [g + 1 if s > 0 else -(g + 1) for g, s in word]


def word_from_json(letters: Sequence[int]) -> Word:
    out = []
    for k in letters:
        if not isinstance(k, int) or k == 0:
            raise ValueError(f"word letters are nonzero integers, got {k!r}")
        out.append((abs(k) - 1, 1 if k > 0 else -1))
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """A finite group presentation: ngens generators, a tuple of relator words."""

    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.ngens < 0:
            raise ValueError("ngens must be nonnegative")
        for w in self.relators:
            for g, s in w:
                if not 0 <= g < self.ngens:
                    raise ValueError(f"generator index {g} out of range")
                if s not in (1, -1):
                    raise ValueError(f"letter sign must be +1 or -1, got {s}")

    def to_json(self) -> dict:
        return {
            "kind": "presentation",
            "ngens": self.ngens,
            "relators": [word_to_json(w) for w in self.relators],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Presentation":
        if doc.get("kind", "presentation") != "presentation":
            raise ValueError(f"expected a presentation, got kind {doc['kind']!r}")
        return cls(
            ngens=int(doc["ngens"]),
            relators=tuple(word_from_json(w) for w in doc["relators"]),
        )


def presentation_of(q: Quandle) -> Presentation:
    """One generator per element; conjugation by a_i sends a_j to a_{j*i}.

    Diagonal pairs are skipped because idempotence makes those relators
    freely trivial.
    """
    rels = []
    for i in range(q.order):
        for j in range(q.order):
            if i == j:
                continue
            rels.append(((i, -1), (j, 1), (i, 1), (q.table[j][i], -1)))
    return Presentation(q.order, tuple(rels))


def commutator_generators(q: Quandle) -> list[Word]:
    """Words generating the commutator subgroup of the enveloping group.

    The commutator of two generators collapses to a_{j*i}^{-1} a_j, so the
    whole (possibly infinite) commutator subgroup is normally generated by
    at most |Q|^2 short words.  Duplicates and freely trivial words are
    dropped; for a trivial quandle the list is empty.
    """
    seen = set()
    out = []
    for i in range(q.order):
        for j in range(q.order):
            w = free_reduce(((q.table[j][i], -1), (j, 1)))
            if w and w not in seen:
                seen.add(w)
                out.append(w)
    return out


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    d: tuple
    u: tuple
    v: tuple
    invariant_factors: tuple
    free_rank: int


def _identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += x * bk[j]
    return out


def _det(mat) -> int:
    """Bareiss fraction-free determinant."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(matrix) -> SmithForm:
    """Diagonalize an integer matrix with certified transforms.

    Returns D, U, V with U*A*V = D, U and V unimodular, and the diagonal
    entries nonnegative with each dividing the next.  The product identity
    and both determinants are re-checked before returning, so a returned
    SmithForm is a verified certificate, not just a claim.
    """
    original = [list(map(int, row)) for row in matrix]
    m = len(original)
    n = len(original[0]) if m else 0
    for row in original:
        if len(row) != n:
            raise ValueError("matrix rows must have equal length")
    a = [row[:] for row in original]
    u = _identity_matrix(m)
    v = _identity_matrix(n)

    def row_op(i, k, c):  # row i -= c * row k
        for j in range(n):
            a[i][j] -= c * a[k][j]
        for j in range(m):
            u[i][j] -= c * u[k][j]

    def col_op(j, k, c):  # col j -= c * col k
        for i in range(m):
            a[i][j] -= c * a[i][k]
        for i in range(n):
            v[i][j] -= c * v[i][k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find the smallest nonzero entry in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot clean; pull in any entry it does not divide yet
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            row_op(t, culprit, -1)  # row t += row culprit
            continue
        t += 1

    det_u = _det(u)
    det_v = _det(v)
    if det_u not in (1, -1) or det_v not in (1, -1):
        raise AssertionError("transform matrices lost unimodularity")
    if _mat_mul(_mat_mul(u, original), v) != a:
        raise AssertionError("certificate U*A*V = D failed to re-verify")

    factors = tuple(a[i][i] for i in range(min(m, n)) if a[i][i] != 0)
    return SmithForm(
        d=tuple(tuple(row) for row in a),
        u=tuple(tuple(row) for row in u),
        v=tuple(tuple(row) for row in v),
        invariant_factors=factors,
        free_rank=n - len(factors),
    )


def relator_matrix(p: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = []
    for w in p.relators:
        row = [0] * p.ngens
        for g, s in w:
            row[g] += s
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> tuple[int, tuple]:
    """Cokernel of the relator matrix: (free rank, nontrivial torsion factors)."""
    if not p.relators:
        return p.ngens, ()
    snf = smith_normal_form(relator_matrix(p))
    torsion = tuple(d for d in snf.invariant_factors if d > 1)
    return snf.free_rank, torsion


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration
# ---------------------------------------------------------------------------


class _CosetTable:
    def __init__(self, ngens: int, max_cosets: int, relators):
        self.ngens = ngens
        self.width = 2 * ngens
        self.max_cosets = max_cosets
        self.relators = relators
        self.table: list[list] = []
        self.parent: list[int] = []
        self.nlive = 0
        self._new_coset()

    @staticmethod
    def _col(letter) -> int:
        g, s = letter
        return 2 * g if s > 0 else 2 * g + 1

    @staticmethod
    def _inv_col(col: int) -> int:
        return col ^ 1

    def _new_coset(self) -> int:
        idx = len(self.table)
        self.table.append([None] * self.width)
        self.parent.append(idx)
        self.nlive += 1
        return idx

    def rep(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def _merge(self, a: int, b: int, queue: list):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.nlive -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            dead = queue[i]
            i += 1
            for col in range(self.width):
                target = self.table[dead][col]
                if target is None:
                    continue
                self.table[target][self._inv_col(col)] = None
                mu = self.rep(dead)
                nu = self.rep(target)
                if self.table[mu][col] is not None:
                    self._merge(nu, self.table[mu][col], queue)
                elif self.table[nu][self._inv_col(col)] is not None:
                    self._merge(mu, self.table[nu][self._inv_col(col)], queue)
                else:
                    self.table[mu][col] = nu
                    self.table[nu][self._inv_col(col)] = mu

    def define(self, c: int, col: int) -> None:
        if self.nlive >= self.max_cosets:
            self._lookahead()
            if self.nlive >= self.max_cosets:
                raise CosetLimitExceeded(
                    f"exceeded {self.max_cosets} live cosets; raise max_cosets "
                    "(a blown limit does not prove the index infinite)"
                )
        d = self._new_coset()
        self.table[c][col] = d
        self.table[d][self._inv_col(col)] = c

    def _lookahead(self) -> None:
        """Scan every relator at every live coset, coincidences only."""
        for c in range(len(self.table)):
            if self.rep(c) != c:
                continue
            for rel in self.relators:
                if self.rep(c) != c:
                    break
                self.scan(c, rel)

    def scan(self, start: int, word) -> None:
        """Trace a relator without defining; record a coincidence if forced."""
        f = start
        i = 0
        b = start
        j = len(word) - 1
        while True:
            while i <= j:
                nxt = self.table[f][self._col(word[i])]
                if nxt is None:
                    break
                f = self.rep(nxt)
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = self.table[b][self._inv_col(self._col(word[j]))]
                if prv is None:
                    break
                b = self.rep(prv)
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                col = self._col(word[i])
                self.table[f][col] = b
                self.table[b][self._inv_col(col)] = f
                return
            return  # gap wider than one letter: nothing to deduce without defining

    def scan_and_fill(self, start: int, word) -> None:
        f = start
        i = 0
        b = start
        j = len(word) - 1
        while True:
            while i <= j:
                nxt = self.table[f][self._col(word[i])]
                if nxt is None:
                    break
                f = self.rep(nxt)
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = self.table[b][self._inv_col(self._col(word[j]))]
                if prv is None:
                    break
                b = self.rep(prv)
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            col = self._col(word[i])
            if i == j:
                self.table[f][col] = b
                self.table[b][self._inv_col(col)] = f
                return
            self.define(f, col)


def todd_coxeter(
    p: Presentation,
    subgroup_words: Sequence = (),
    max_cosets: int = 100_000,
) -> int:
    """Index of the subgroup generated by the given words, by HLT enumeration.

    Completes only when the index is finite and fits under max_cosets live
    cosets; hitting the limit raises CosetLimitExceeded after one lookahead
    pass tries to shrink the table.  A completed table is verified before
    the index is returned: every column is a bijection on live cosets and
    every relator traces to the identity everywhere.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    relators = [free_reduce(w) for w in p.relators]
    subgroup = [free_reduce(w) for w in subgroup_words]
    for w in subgroup:
        for g, _ in w:
            if not 0 <= g < p.ngens:
                raise ValueError(f"subgroup word uses unknown generator {g}")

    ct = _CosetTable(p.ngens, max_cosets, relators)
    for w in subgroup:
        ct.scan_and_fill(0, w)
    alpha = 0
    while alpha < len(ct.table):
        if ct.rep(alpha) != alpha:
            alpha += 1
            continue
        for rel in relators:
            if ct.rep(alpha) != alpha:
                break
            ct.scan_and_fill(alpha, rel)
        if ct.rep(alpha) == alpha:
            for col in range(ct.width):
                if ct.table[alpha][col] is None:
                    ct.define(alpha, col)
        alpha += 1

    live = [c for c in range(len(ct.table)) if ct.rep(c) == c]
    live_set = set(live)
    # normalize any entries that still point at retired cosets
    for c in live:
        ct.table[c] = [None if e is None else ct.rep(e) for e in ct.table[c]]
    for c in live:
        for col in range(ct.width):
            d = ct.table[c][col]
            if d is None or d not in live_set:
                raise AssertionError("incomplete table escaped the loop")
            if ct.table[d][ct._inv_col(col)] != c:
                raise AssertionError("table lost mirror symmetry")
    for c in live:
        for rel in relators:
            cur = c
            for letter in rel:
                cur = ct.table[cur][ct._col(letter)]
            if cur != c:
                raise AssertionError("relator does not act trivially on completed table")
    start = ct.rep(0)
    for w in subgroup:
        cur = start
        for letter in w:
            cur = ct.table[cur][ct._col(letter)]
        if cur != start:
            raise AssertionError("subgroup generator moved its own coset")
    return len(live)


# ---------------------------------------------------------------------------
# Homomorphism checks against concrete groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConcreteModel:
    """A group given by callables; the carrier may be infinite.

    Elements must be hashable.  Only the elements actually touched during a
    verification run are ever constructed.
    """

    name: str
    identity: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]


def integer_model() -> ConcreteModel:
    """The integers under addition."""
    return ConcreteModel("Z", 0, lambda a, b: a + b, lambda a: -a)


def semidirect_z_model(n: int) -> ConcreteModel:
    """Z_n extended by Z acting by inversion; elements are pairs (a, m)."""
    if n < 1:
        raise ValueError("modulus must be positive")

    def mul(x, y):
        a, m = x
        b, k = y
        sign = 1 if m % 2 == 0 else -1
        return ((a + sign * b) % n, m + k)

    def inv(x):
        a, m = x
        sign = 1 if m % 2 == 0 else -1
        return ((-sign * a) % n, -m)

    return ConcreteModel(f"Z{n}:Z", (0, 0), mul, inv)


def permutation_model(n: int) -> ConcreteModel:
    """The symmetric group on n points, with Perm elements."""
    return ConcreteModel(
        f"Sym({n})", Perm.identity(n), lambda a, b: a * b, lambda a: a.inverse()
    )


def evaluate_word(model: ConcreteModel, images: Sequence, word) -> Any:
    acc = model.identity
    for g, s in word:
        x = images[g] if s > 0 else model.inv(images[g])
        acc = model.mul(acc, x)
    return acc


def verify_hom(
    p: Presentation,
    model: ConcreteModel,
    images: Sequence,
    targets: Sequence = (),
    max_length: int = 8,
) -> dict:
    """Check that generator images satisfy the relators; probe surjectivity.

    The probe multiplies images and their inverses breadth-first up to
    max_length letters and reports which target elements were reached.
    Reaching every target does not prove surjectivity onto an infinite
    model; missing one at this depth does not disprove it.  The report
    carries raw outcomes and never raises.
    """
    if len(images) != p.ngens:
        raise ValueError(f"expected {p.ngens} images, got {len(images)}")
    failures = []
    for idx, rel in enumerate(p.relators):
        if evaluate_word(model, images, rel) != model.identity:
            failures.append(idx)

    moves = list(images) + [model.inv(x) for x in images]
    visited = {model.identity}
    frontier = [model.identity]
    remaining = set(range(len(targets)))
    for t, target in enumerate(targets):
        if target == model.identity:
            remaining.discard(t)
    depth = 0
    while frontier and remaining and depth < max_length:
        depth += 1
        nxt = []
        for e in frontier:
            for mv in moves:
                val = model.mul(e, mv)
                if val not in visited:
                    visited.add(val)
                    nxt.append(val)
                    for t in list(remaining):
                        if targets[t] == val:
                            remaining.discard(t)
        frontier = nxt

    reached = [t not in remaining for t in range(len(targets))]
    return {
        "model": model.name,
        "relators_hold": not failures,
        "failed_relators": failures,
        "targets_reached": reached,
        "all_targets_reached": all(reached),
        "elements_explored": len(visited),
    }
