"""Irreducible crystallographic root systems in simple-root coordinates.

Every root is a tuple of integers: its coefficients on the simple basis.
The bilinear form is normalised so long roots have squared length 2, which
makes all reflection matrices integral.  Positive roots are stored in a
canonical order (height ascending, then lexicographic), and all indices
into that list are 0-based.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from weylq.errors import InconsistencyError, ResourceCapError, ValidationError

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]
RootSubset = Tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# Admissible ranks; E is the finite list, the others are lower bounds.
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "F": 4, "G": 2}
_EXACT_RANK = {"F": 4, "G": 2}
_E_RANKS = (6, 7, 8)

DEFAULT_WEYL_CAP = 2_000_000

_WEYL_ORDER_EXCEPTIONAL = {
    ("E", 6): 51_840,
    ("E", 7): 2_903_040,
    ("E", 8): 696_729_600,
    ("F", 4): 1_152,
    ("G", 2): 12,
}


@dataclass(frozen=True)
class RootSystemSpec:
    """A family letter plus a rank, validated on construction."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValidationError(
                f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}"
            )
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise ValidationError(f"rank must be an integer, got {self.rank!r}")
        if self.family == "E":
            if self.rank not in _E_RANKS:
                raise ValidationError("family E requires rank 6, 7 or 8")
            return
        lo = _MIN_RANK[self.family]
        hi = _EXACT_RANK.get(self.family)
        if self.rank < lo or (hi is not None and self.rank != hi):
            bound = f"exactly {hi}" if hi is not None else f"at least {lo}"
            raise ValidationError(f"family {self.family} requires rank {bound}")


@dataclass(frozen=True)
class RootSystem:
    """An immutable root system with its classical numeric invariants.

    positive_roots is sorted by height then lexicographically; marks are the
    coefficients of the highest root; coxeter_number is 1 plus its height and
    index_of_connection is the determinant of the Cartan matrix.
    """

    family: str
    rank: int
    cartan: Matrix
    gram: Tuple[Tuple[Fraction, ...], ...]
    positive_roots: Tuple[Vector, ...]
    highest_root_index: int
    marks: Vector
    coxeter_number: int
    index_of_connection: int
    weyl_order: int

    @property
    def highest_root(self) -> Vector:
        return self.positive_roots[self.highest_root_index]

    def __repr__(self) -> str:
        return f"RootSystem({self.family}{self.rank})"


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as an integer matrix on simple-root coordinates.

    The word is one shortest generator word (1-based indices) discovered by
    the breadth-first closure; it is carried for display and testing only and
    does not take part in equality.
    """

    matrix: Matrix
    word: Tuple[int, ...] = field(compare=False)

    def __repr__(self) -> str:
        if not self.word:
            return "WeylElement(e)"
        return "WeylElement(" + "*".join(f"s{i}" for i in self.word) + ")"


def height(root: Vector) -> int:
    """Sum of simple-root coefficients."""
    return sum(root)


def _dynkin_edges(family: str, rank: int) -> Tuple[Tuple[int, int], ...]:
    """Edges of the Dynkin diagram on 0-based node indices."""
    chain = tuple((i, i + 1) for i in range(rank - 1))
    if family in ("A", "B", "C", "F", "G"):
        return chain
    if family == "D":
        return tuple((i, i + 1) for i in range(rank - 2)) + ((rank - 3, rank - 1),)
    # E: chain 1-3-4-5-6(-7-8) plus 2 attached to 4, converted to 0-based.
    edges_1b = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
    if rank >= 7:
        edges_1b.append((6, 7))
    if rank == 8:
        edges_1b.append((7, 8))
    return tuple((a - 1, b - 1) for a, b in edges_1b)


def _simple_norms(family: str, rank: int) -> Tuple[Fraction, ...]:
    """Squared lengths of the simple roots, long roots normalised to 2."""
    two = Fraction(2)
    one = Fraction(1)
    if family in ("A", "D", "E"):
        return (two,) * rank
    if family == "B":
        return (two,) * (rank - 1) + (one,)
    if family == "C":
        return (one,) * (rank - 1) + (two,)
    if family == "F":
        return (two, two, one, one)
    # G2: the first simple root is the short one, so the highest root is
    # 3*a1 + 2*a2.
    return (Fraction(2, 3), two)


def _weyl_order(family: str, rank: int) -> int:
    import math

    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return (2**rank) * math.factorial(rank)
    if family == "D":
        return (2 ** (rank - 1)) * math.factorial(rank)
    return _WEYL_ORDER_EXCEPTIONAL[(family, rank)]


def _det_int(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination on Fractions."""
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


@functools.lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    spec = RootSystemSpec(family, rank)
    norms = _simple_norms(family, rank)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = norms[i]
    for a, b in _dynkin_edges(family, rank):
        # Adjacent simple roots always pair to minus half the longer norm.
        val = -max(norms[a], norms[b]) / 2
        gram[a][b] = val
        gram[b][a] = val

    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            entry = 2 * gram[i][j] / gram[j][j]
            if entry.denominator != 1:
                raise InconsistencyError("non-integral Cartan entry")
            cartan[i][j] = int(entry)

    # Close the simple roots under simple reflections; positives are the
    # orbit vectors with nonnegative coefficients.
    simples = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for j in range(rank):
                pairing = sum(cartan[i][j] * v[i] for i in range(rank))
                w = tuple(
                    v[k] - pairing if k == j else v[k] for k in range(rank)
                )
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    positives = sorted(
        (v for v in seen if all(c >= 0 for c in v)),
        key=lambda v: (height(v), v),
    )
    if 2 * len(positives) != len(seen):
        raise InconsistencyError("root orbit is not symmetric")

    highest_idx = len(positives) - 1
    highest = positives[highest_idx]
    if any(height(v) == height(highest) for v in positives[:-1]):
        raise InconsistencyError("highest root is not unique")
    h = 1 + height(highest)
    f_det = _det_int(cartan)
    if f_det.denominator != 1 or f_det <= 0:
        raise InconsistencyError("Cartan determinant is not a positive integer")
    f = int(f_det)
    order = _weyl_order(family, rank)
    if 2 * len(positives) != rank * h:
        raise InconsistencyError("positive root count disagrees with Coxeter number")
    if order % f != 0:
        raise InconsistencyError("index of connection does not divide the group order")

    return RootSystem(
        family=family,
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        gram=tuple(tuple(r) for r in gram),
        positive_roots=tuple(positives),
        highest_root_index=highest_idx,
        marks=highest,
        coxeter_number=h,
        index_of_connection=f,
        weyl_order=order,
    )


def build_root_system(family, rank: int | None = None) -> RootSystem:
    """Build the root system for a family letter and rank.

    Accepts either a RootSystemSpec or the (family, rank) pair directly.
    """
    if isinstance(family, RootSystemSpec):
        spec = family
    else:
        spec = RootSystemSpec(str(family), rank)
    return _build(spec.family, spec.rank)


@functools.lru_cache(maxsize=None)
def root_index(rs: RootSystem) -> Dict[Vector, int]:
    """Map each positive root to its index in the canonical order."""
    return {v: i for i, v in enumerate(rs.positive_roots)}


def root_norm2(rs: RootSystem, v: Vector) -> Fraction:
    total = Fraction(0)
    for i, vi in enumerate(v):
        if not vi:
            continue
        for j, vj in enumerate(v):
            if vj:
                total += vi * vj * rs.gram[i][j]
    return total


def classify_length(rs: RootSystem, v: Vector) -> str:
    """Classify a root (given by coordinates, either sign) as long or short.

    In a simply laced system every root counts as long.
    """
    vv = tuple(v)
    if vv not in root_index(rs) and tuple(-c for c in vv) not in root_index(rs):
        raise ValidationError(f"{vv} is not a root of {rs.family}{rs.rank}")
    norms = {root_norm2(rs, r) for r in rs.positive_roots}
    if len(norms) == 1:
        return "long"
    return "long" if root_norm2(rs, vv) == max(norms) else "short"


@functools.lru_cache(maxsize=None)
def simple_reflection_matrices(rs: RootSystem) -> Tuple[Matrix, ...]:
    """Matrices of the simple reflections acting on coordinate columns."""
    mats = []
    for j in range(rs.rank):
        rows = []
        for k in range(rs.rank):
            if k != j:
                rows.append(tuple(1 if i == k else 0 for i in range(rs.rank)))
            else:
                rows.append(
                    tuple(
                        (1 if i == j else 0) - rs.cartan[i][j]
                        for i in range(rs.rank)
                    )
                )
        mats.append(tuple(rows))
    return tuple(mats)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@functools.lru_cache(maxsize=None)
def _weyl_elements(rs: RootSystem) -> Tuple[WeylElement, ...]:
    gens = simple_reflection_matrices(rs)
    ident = _identity(rs.rank)
    seen = {ident: ()}
    order: List[WeylElement] = [WeylElement(ident, ())]
    frontier = [(ident, ())]
    while frontier:
        nxt = []
        for mat, word in frontier:
            for j in range(rs.rank):
                prod = _mat_mul(mat, gens[j])
                if prod not in seen:
                    new_word = word + (j + 1,)
                    seen[prod] = new_word
                    elem = WeylElement(prod, new_word)
                    order.append(elem)
                    nxt.append((prod, new_word))
        nxt.sort(key=lambda t: t[1])
        frontier = nxt
    if len(order) != rs.weyl_order:
        raise InconsistencyError(
            f"closure found {len(order)} elements, expected {rs.weyl_order}"
        )
    return tuple(order)


def resolve_weyl_cap(cap: int | None = None) -> int:
    """Effective enumeration cap: explicit value, else WEYLQ_WEYL_CAP, else default."""
    if cap is not None:
        return cap
    raw = os.environ.get("WEYLQ_WEYL_CAP")
    if raw is None:
        return DEFAULT_WEYL_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"WEYLQ_WEYL_CAP must be an integer, got {raw!r}")


def enumerate_weyl(rs: RootSystem, cap: int | None = None) -> Tuple[WeylElement, ...]:
    """All Weyl group elements, identity first, in breadth-first word order.

    Refuses upfront when the known group order exceeds the cap.
    """
    limit = resolve_weyl_cap(cap)
    if limit < 1:
        raise ValidationError("cap must be a positive integer")
    if rs.weyl_order > limit:
        raise ResourceCapError(
            f"Weyl group of {rs.family}{rs.rank} has order {rs.weyl_order}, "
            f"which exceeds the cap {limit}"
        )
    return _weyl_elements(rs)


def weyl_from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Product of simple reflections; word entries are 1-based."""
    gens = simple_reflection_matrices(rs)
    mat = _identity(rs.rank)
    w = tuple(word)
    for j in w:
        if not 1 <= j <= rs.rank:
            raise ValidationError(f"generator index {j} out of range 1..{rs.rank}")
        mat = _mat_mul(mat, gens[j - 1])
    return WeylElement(mat, w)


def weyl_act(rs: RootSystem, w: WeylElement, v: Vector) -> Vector:
    """Apply a Weyl element to a vector of simple-root coordinates."""
    if len(v) != rs.rank:
        raise ValidationError("vector length does not match the rank")
    return tuple(
        sum(w.matrix[i][k] * v[k] for k in range(rs.rank)) for i in range(rs.rank)
    )


def poset_leq(a: Vector, b: Vector) -> bool:
    """Componentwise order on coefficient vectors (the root poset order)."""
    if len(a) != len(b):
        raise ValidationError("cannot compare vectors of different lengths")
    return all(x <= y for x, y in zip(a, b))


def normalize_subset(rs: RootSystem, indices: Iterable[int]) -> RootSubset:
    """Sorted duplicate-free index tuple, validated against the root list."""
    n = len(rs.positive_roots)
    out = sorted(set(indices))
    for i in out:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
            raise ValidationError(f"root index {i!r} out of range 0..{n - 1}")
    return tuple(out)


def subset_complement(rs: RootSystem, indices: Iterable[int]) -> RootSubset:
    chosen = set(normalize_subset(rs, indices))
    return tuple(i for i in range(len(rs.positive_roots)) if i not in chosen)


def subset_from_roots(rs: RootSystem, roots: Iterable[Vector]) -> RootSubset:
    lookup = root_index(rs)
    out = set()
    for r in roots:
        rr = tuple(r)
        if rr not in lookup:
            raise ValidationError(
                f"{rr} is not a positive root of {rs.family}{rs.rank}; "
                f"valid roots: {list(lookup)}"
            )
        out.add(lookup[rr])
    return tuple(sorted(out))


def lower_closure(rs: RootSystem, indices: Iterable[int]) -> RootSubset:
    """Smallest ideal of the root poset containing the given roots."""
    base = normalize_subset(rs, indices)
    roots = rs.positive_roots
    out = {
        j
        for j in range(len(roots))
        if any(poset_leq(roots[j], roots[i]) for i in base)
    }
    return tuple(sorted(out))


def is_ideal(rs: RootSystem, indices: Iterable[int]) -> bool:
    """True when the subset is downward closed in the root poset."""
    subset = normalize_subset(rs, indices)
    return subset == lower_closure(rs, subset)


@functools.lru_cache(maxsize=None)
def enumerate_ideals(rs: RootSystem) -> Tuple[RootSubset, ...]:
    """All ideals of the positive root poset, sorted by size then indices.

    The canonical root order ascends in height, so it is a linear extension
    of the poset and a left-to-right scan can decide membership greedily.
    """
    roots = rs.positive_roots
    n = len(roots)
    preds = [
        [j for j in range(i) if poset_leq(roots[j], roots[i])] for i in range(n)
    ]
    found: List[RootSubset] = []
    chosen = [False] * n

    def walk(i: int) -> None:
        if i == n:
            found.append(tuple(k for k in range(n) if chosen[k]))
            return
        walk(i + 1)
        if all(chosen[j] for j in preds[i]):
            chosen[i] = True
            walk(i + 1)
            chosen[i] = False

    walk(0)
    found.sort(key=lambda s: (len(s), s))
    return tuple(found)
