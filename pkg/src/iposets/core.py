"""Iposet data model: a finite strict poset with ordered source/target interfaces.

The order is stored as full transitive relation, one bitset row per point:
``up[x]`` has bit ``y`` set iff ``x < y``; ``down`` is the transpose.
"""

from __future__ import annotations

from typing import Iterable, Sequence

MAX_POINTS = 64


class IposetError(ValueError):
    """Base class for all validation errors raised by this package."""


class CycleDetected(IposetError):
    pass


class NotMinimal(IposetError):
    pass


class NotMaximal(IposetError):
    pass


class DuplicateInterfacePoint(IposetError):
    pass


class IndexOutOfRange(IposetError):
    pass


class Overflow(IposetError):
    pass


class NotABijection(IposetError):
    pass


class NotInterfaceConsistent(IposetError):
    pass


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    cols = [0] * n
    for x in range(n):
        for y in bits(rows[x]):
            cols[y] |= 1 << x
    return tuple(cols)


class Iposet:
    """Immutable iposet ``(s, P, t): len(sources) -> len(targets)``.

    Use :func:`make_iposet` to build one from relation pairs; the plain
    constructor trusts its arguments and is meant for internal fast paths.
    """

    __slots__ = ("n", "up", "down", "sources", "targets", "_hash")

    def __init__(self, n, up, sources=(), targets=(), down=None):
        self.n = n
        self.up = tuple(up)
        self.down = _transpose(self.up, n) if down is None else tuple(down)
        self.sources = tuple(sources)
        self.targets = tuple(targets)
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def n_points(self) -> int:
        return self.n

    @property
    def dom(self) -> int:
        return len(self.sources)

    @property
    def cod(self) -> int:
        return len(self.targets)

    def less(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self.up[x] | self.down[x]) >> y & 1)

    def relation_pairs(self) -> list[tuple[int, int]]:
        """All pairs ``(x, y)`` with ``x < y``, sorted lexicographically."""
        return [(x, y) for x in range(self.n) for y in bits(self.up[x])]

    def order_matrix(self) -> list[list[bool]]:
        return [[self.less(x, y) for y in range(self.n)] for x in range(self.n)]

    @property
    def n_relations(self) -> int:
        return sum(r.bit_count() for r in self.up)

    @property
    def source_mask(self) -> int:
        m = 0
        for p in self.sources:
            m |= 1 << p
        return m

    @property
    def target_mask(self) -> int:
        m = 0
        for p in self.targets:
            m |= 1 << p
        return m

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def minimal_mask(self) -> int:
        return sum(1 << x for x in range(self.n) if not self.down[x])

    def maximal_mask(self) -> int:
        return sum(1 << x for x in range(self.n) if not self.up[x])

    def is_poset(self) -> bool:
        return not self.sources and not self.targets

    def underlying(self) -> "Iposet":
        """The same order with both interfaces dropped."""
        if self.is_poset():
            return self
        return Iposet(self.n, self.up, (), (), self.down)

    def with_interfaces(self, sources, targets) -> "Iposet":
        return make_iposet_from_rows(self.n, self.up, sources, targets)

    # -- value semantics ---------------------------------------------------

    def _key(self):
        return (self.n, self.up, self.sources, self.targets)

    def __eq__(self, other):
        if not isinstance(other, Iposet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return (
            f"Iposet(n={self.n}, rel={self.relation_pairs()}, "
            f"sources={list(self.sources)}, targets={list(self.targets)})"
        )

    def __reduce__(self):
        return (Iposet, (self.n, self.up, self.sources, self.targets, self.down))


# -- construction ---------------------------------------------------------


def _close(n: int, up: list[int]) -> list[int]:
    """Transitive closure of bitset rows (Warshall)."""
    up = list(up)
    for k in range(n):
        kb = 1 << k
        row_k = up[k]
        for x in range(n):
            if up[x] & kb:
                up[x] |= row_k
    return up


def _check_interfaces(n, up, down, sources, targets):
    for seq in (sources, targets):
        for p in seq:
            if not isinstance(p, int) or not 0 <= p < n:
                raise IndexOutOfRange(f"interface point {p!r} not in 0..{n - 1}")
        if len(set(seq)) != len(seq):
            raise DuplicateInterfacePoint(f"interface {list(seq)} repeats a point")
    for p in sources:
        if down[p]:
            raise NotMinimal(f"source point {p} is not minimal")
    for p in targets:
        if up[p]:
            raise NotMaximal(f"target point {p} is not maximal")


def make_iposet(
    n_points: int,
    relation_pairs: Iterable[tuple[int, int]] = (),
    sources: Sequence[int] = (),
    targets: Sequence[int] = (),
) -> Iposet:
    """Build a validated iposet, closing ``relation_pairs`` transitively."""
    if not isinstance(n_points, int) or n_points < 0:
        raise IndexOutOfRange(f"bad point count {n_points!r}")
    if n_points > MAX_POINTS:
        raise Overflow(f"{n_points} points exceed the cap of {MAX_POINTS}")
    up = [0] * n_points
    for a, b in relation_pairs:
        for p in (a, b):
            if not isinstance(p, int) or not 0 <= p < n_points:
                raise IndexOutOfRange(f"point {p!r} not in 0..{n_points - 1}")
        up[a] |= 1 << b
    return make_iposet_from_rows(n_points, up, sources, targets)


def make_iposet_from_rows(n_points, up_rows, sources=(), targets=()) -> Iposet:
    up = _close(n_points, up_rows)
    for x in range(n_points):
        if up[x] >> x & 1:
            raise CycleDetected(f"relation has a cycle through point {x}")
    down = _transpose(up, n_points)
    sources, targets = tuple(sources), tuple(targets)
    _check_interfaces(n_points, up, down, sources, targets)
    return Iposet(n_points, up, sources, targets, down)


def validate(P: Iposet) -> None:
    """Re-check every invariant of ``P``; raises on the first violation."""
    n = P.n
    if len(P.up) != n or len(P.down) != n:
        raise IndexOutOfRange("row count does not match point count")
    full = (1 << n) - 1
    for x in range(n):
        if P.up[x] & ~full:
            raise IndexOutOfRange(f"row {x} references points beyond {n - 1}")
        if P.up[x] >> x & 1:
            raise CycleDetected(f"point {x} is related to itself")
        for y in bits(P.up[x]):
            if P.up[y] & ~P.up[x]:
                raise CycleDetected(f"order is not transitive at {x} < {y}")
    if _transpose(P.up, n) != P.down:
        raise IposetError("down rows are not the transpose of up rows")
    _check_interfaces(n, P.up, P.down, P.sources, P.targets)


def poset(n_points: int, relation_pairs: Iterable[tuple[int, int]] = ()) -> Iposet:
    return make_iposet(n_points, relation_pairs)


def discrete(n: int, sources=(), targets=()) -> Iposet:
    return Iposet(n, [0] * n, sources, targets, [0] * n)


def chain(n: int) -> Iposet:
    """The linear order on ``n`` points, ``0 < 1 < ... < n-1``."""
    up = [((1 << n) - 1) & ~((1 << (x + 1)) - 1) for x in range(n)]
    return Iposet(n, up)


EMPTY = Iposet(0, ())


def identity(n: int) -> Iposet:
    if n < 0:
        raise IndexOutOfRange("identity arity must be non-negative")
    pts = tuple(range(n))
    return discrete(n, pts, pts)


def singleton(has_source: bool, has_target: bool) -> Iposet:
    """One of the four one-point iposets."""
    return discrete(1, (0,) if has_source else (), (0,) if has_target else ())


def opposite(P: Iposet) -> Iposet:
    return Iposet(P.n, P.down, P.targets, P.sources, P.up)


# -- discrete variants ------------------------------------------------------


def is_discrete(P: Iposet) -> bool:
    return not any(P.up)


def is_starter(P: Iposet) -> bool:
    return is_discrete(P) and len(P.targets) == P.n


def is_terminator(P: Iposet) -> bool:
    return is_discrete(P) and len(P.sources) == P.n


def is_symmetry(P: Iposet) -> bool:
    return is_starter(P) and is_terminator(P)


def symmetry_from_permutation(perm: Sequence[int]) -> Iposet:
    """Discrete iposet whose interfaces encode ``perm``.

    Point ``i`` carries source index ``i`` and target index ``perm[i]``.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise NotABijection(f"{list(perm)} is not a permutation of 0..{n - 1}")
    targets = [0] * n
    for i, j in enumerate(perm):
        targets[j] = i
    return discrete(n, range(n), targets)


# -- interface consistency ----------------------------------------------------


def is_interface_consistent(P: Iposet) -> bool:
    both = P.source_mask & P.target_mask
    if both.bit_count() < 2:
        return True
    t_index = {p: i for i, p in enumerate(P.targets)}
    last = -1
    for p in P.sources:
        if both >> p & 1:
            if t_index[p] < last:
                return False
            last = t_index[p]
    return True


def interface_order(P: Iposet) -> set[tuple[int, int]]:
    """The strict order induced on interface points by interface numbering.

    The union of the source and target numberings need not be transitive
    (sources ``[a, b]``, targets ``[b, c]``), so its transitive closure is
    returned.
    """
    if not is_interface_consistent(P):
        raise NotInterfaceConsistent("source and target numbering disagree")
    rows = [0] * P.n
    for seq in (P.sources, P.targets):
        for i, x in enumerate(seq):
            for y in seq[i + 1:]:
                rows[x] |= 1 << y
    rows = _close(P.n, rows)
    return {(x, y) for x in range(P.n) for y in bits(rows[x])}


# -- substructure -------------------------------------------------------------


def connected_components(P: Iposet) -> list[list[int]]:
    """Connected components of the comparability graph, each sorted, ordered by least point."""
    seen = 0
    comps = []
    for start in range(P.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= P.up[x] | P.down[x]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def component_masks(P: Iposet) -> list[int]:
    return [sum(1 << x for x in c) for c in connected_components(P)]


def restrict(P: Iposet, points: Sequence[int], sources=(), targets=()) -> Iposet:
    """Induced order on ``points`` (renumbered 0.. in the given order).

    ``sources``/``targets`` are given in the original numbering and must lie
    in ``points``; the caller is responsible for minimality/maximality.
    """
    index = {p: i for i, p in enumerate(points)}
    mask = 0
    for p in points:
        mask |= 1 << p
    up = []
    for p in points:
        row = 0
        for q in bits(P.up[p] & mask):
            row |= 1 << index[q]
        up.append(row)
    return Iposet(
        len(points), up, [index[p] for p in sources], [index[p] for p in targets]
    )


def induced_subposet(P: Iposet, subset: Iterable[int]) -> Iposet:
    pts = sorted(set(subset))
    for p in pts:
        if not isinstance(p, int) or not 0 <= p < P.n:
            raise IndexOutOfRange(f"point {p!r} not in 0..{P.n - 1}")
    return restrict(P, pts)


def delete_point(P: Iposet, x: int) -> Iposet:
    """Poset obtained by deleting point ``x`` (interfaces dropped)."""
    return induced_subposet(P, [p for p in range(P.n) if p != x])
