"""Class membership: interval orders, sp-posets, step sequences, gp-iposets.

The gluing-parallel search decomposes an iposet either into a parallel
product along its connected components or along a characteristic function
(a Past/Cut/Future labelling whose Cut points become the shared interface),
recursing on both parts. Results are memoised on canonical keys and every
search runs on the canonical representative, so certificates do not depend
on call history.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .algebra import glue, par
from .canonical import canonical_form, canonical_labelling, relabel
from .core import (
    EMPTY,
    Iposet,
    IposetError,
    bits,
    component_masks,
    is_interface_consistent,
    restrict,
    singleton,
)


class NotIntervalOrder(IposetError):
    pass


class IncompatibleOrdering(IposetError):
    pass


# -- interval orders, sp-posets, step sequences -------------------------------


def is_interval_order(P: Iposet) -> bool:
    """``w < y`` and ``x < z`` imply ``w < z`` or ``x < y``.

    The condition fails exactly when two up-sets are incomparable under
    inclusion, so the up-sets of an interval order form a chain.
    """
    ups = sorted(set(P.up), key=int.bit_count)
    return all(a & ~b == 0 for a, b in zip(ups, ups[1:]))


@dataclass(frozen=True)
class IntervalRep:
    """Endpoints into the linear order ``0..L-1`` with ``0`` as bottom and ``L-1`` as top."""

    L: int
    b: tuple
    e: tuple

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.L - 1


def interval_representation(P: Iposet) -> IntervalRep:
    """Interval representation built from the chain of distinct strict down-sets.

    A point sits at the index of its down-set and ends just before the first
    down-set that contains it. Sources are then moved to the bottom sentinel
    and targets to the top one.
    """
    downs = sorted(set(P.down), key=int.bit_count)
    for a, c in zip(downs, downs[1:]):
        if a & ~c:
            raise NotIntervalOrder("down-sets are not linearly ordered by inclusion")
    k = len(downs) - 1 if downs else 0
    where = {d: i for i, d in enumerate(downs)}
    b, e = [], []
    for x in range(P.n):
        b.append(where[P.down[x]])
        first = next((j for j, d in enumerate(downs) if d >> x & 1), None)
        e.append(k if first is None else first - 1)
    L = k + 3
    src, tgt = P.source_mask, P.target_mask
    b = tuple(0 if src >> x & 1 else b[x] + 1 for x in range(P.n))
    e = tuple(L - 1 if tgt >> x & 1 else e[x] + 1 for x in range(P.n))
    return IntervalRep(L, b, e)


def representation_is_valid(P: Iposet, rep: IntervalRep) -> bool:
    top = rep.L - 1
    if rep.L < 3:
        return False
    src, tgt = P.source_mask, P.target_mask
    for x in range(P.n):
        if not 0 <= rep.b[x] <= rep.e[x] <= top:
            return False
        if (rep.b[x] == 0) != bool(src >> x & 1) or (rep.e[x] == top) != bool(tgt >> x & 1):
            return False
        if rep.b[x] >= top or rep.e[x] <= 0:
            return False
        for y in range(P.n):
            if P.less(x, y) != (rep.e[x] < rep.b[y]):
                return False
    return True


def _sp(P: Iposet, mask: int) -> bool:
    if mask & (mask - 1) == 0:
        return True
    # parallel: comparability graph restricted to mask is disconnected
    start = mask & -mask
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= (P.up[x] | P.down[x]) & mask
        frontier = nxt & ~comp
        comp |= nxt
    if comp != mask:
        return _sp(P, comp) and _sp(P, mask & ~comp)
    # serial: incomparability graph restricted to mask is disconnected
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= mask & ~(P.up[x] | P.down[x] | (1 << x))
        frontier = nxt & ~comp
        comp |= nxt
    if comp != mask:
        return _sp(P, comp) and _sp(P, mask & ~comp)
    return False


def is_sp(P: Iposet) -> bool:
    """Series-parallel test by recursive serial/parallel decomposition."""
    return _sp(P, P.all_mask)


def is_step_sequence(P: Iposet) -> bool:
    """Incomparability (reflexive) is transitive."""
    full = P.all_mask
    inc = [full & ~(P.up[x] | P.down[x]) for x in range(P.n)]
    return all(inc[y] == inc[x] for x in range(P.n) for y in bits(inc[x]))


# -- characteristic functions ---------------------------------------------------


class Phase(enum.Enum):
    PAST = "1"
    CUT = "*"
    FUTURE = "0"


class CharFn(NamedTuple):
    """Past/Cut/Future labelling as three disjoint bitmasks."""

    past: int
    cut: int
    future: int

    def phase(self, x: int) -> Phase:
        if self.past >> x & 1:
            return Phase.PAST
        if self.cut >> x & 1:
            return Phase.CUT
        return Phase.FUTURE

    def labels(self, n: int) -> tuple:
        return tuple(self.phase(x) for x in range(n))

    @classmethod
    def from_labels(cls, labels: Sequence[Phase]) -> "CharFn":
        masks = {Phase.PAST: 0, Phase.CUT: 0, Phase.FUTURE: 0}
        for x, ph in enumerate(labels):
            masks[ph] |= 1 << x
        return cls(masks[Phase.PAST], masks[Phase.CUT], masks[Phase.FUTURE])


def is_valid_char_fn(P: Iposet, phi: CharFn) -> bool:
    """All decomposition conditions, including completeness and non-triviality."""
    past, cut, fut = phi
    if past & cut or past & fut or cut & fut or past | cut | fut != P.all_mask:
        return False
    if not past or not fut:
        return False
    if P.source_mask & fut or P.target_mask & past:
        return False
    for x in bits(past):
        if fut & ~P.up[x]:
            return False
        if P.down[x] & (cut | fut):
            return False
    for x in bits(cut):
        if P.up[x] & cut or P.down[x] & fut:
            return False
    return True


def order_ideals(P: Iposet) -> list[int]:
    """All down-closed subsets as bitmasks."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in range(P.n):
                if not ideal >> x & 1 and P.down[x] & ~ideal == 0:
                    grown = ideal | (1 << x)
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return sorted(seen, key=lambda m: (m.bit_count(), m))


def extremal_sets(P: Iposet) -> tuple[int, int]:
    """Points with largest up-set and points with largest down-set."""
    if P.n == 0:
        return 0, 0
    top_up = max(r.bit_count() for r in P.up)
    top_down = max(r.bit_count() for r in P.down)
    pa = sum(1 << x for x in range(P.n) if P.up[x].bit_count() == top_up)
    pb = sum(1 << x for x in range(P.n) if P.down[x].bit_count() == top_down)
    return pa, pb


def quick_reject_gluing(P: Iposet) -> bool:
    """True if some point of largest up-set is not below some point of largest down-set.

    Rejection means no non-trivial gluing decomposition exists.
    """
    pa, pb = extremal_sets(P)
    return any(pb & ~P.up[x] for x in bits(pa))


def enumerate_char_fns(P: Iposet, heuristic: bool = False) -> Iterator[CharFn]:
    """All non-trivial, complete characteristic functions of ``P``.

    With ``heuristic`` only those sending every point of largest up-set to
    Past and of largest down-set to Future are produced; this may miss
    decompositions whose parts are gluing-parallel.
    """
    full = P.all_mask
    src, tgt = P.source_mask, P.target_mask
    ideals = order_ideals(P)
    pa, pb = extremal_sets(P) if heuristic else (0, 0)
    for past in ideals:
        if not past or past & tgt or past & pa != pa:
            continue
        common = full
        for x in bits(past):
            common &= P.up[x]
        common &= ~src
        if not common:
            continue
        floor = past | (full & ~common)
        for rest in ideals:
            if rest & floor != floor or rest == full:
                continue
            fut = full & ~rest
            if fut & pb != pb:
                continue
            cut = rest & ~past
            if any(P.up[x] & cut for x in bits(cut)):
                continue
            yield CharFn(past, cut, fut)


def _interface_chains(P: Iposet, cut: int):
    s_chain = [p for p in P.sources if cut >> p & 1]
    t_chain = [p for p in P.targets if cut >> p & 1]
    return s_chain, t_chain


def middle_orders(P: Iposet, phi: CharFn, dedup_twins: bool = True) -> Iterator[tuple]:
    """Numberings of the Cut points compatible with the source and target numbering.

    Interface-free Cut points with identical up- and down-sets are
    interchangeable; with ``dedup_twins`` only one arrangement of each such
    class is produced.
    """
    cut = phi.cut
    pts = list(bits(cut))
    s_chain, t_chain = _interface_chains(P, cut)
    pred = {p: 0 for p in pts}
    for chain in (s_chain, t_chain):
        for a, b in zip(chain, chain[1:]):
            pred[b] |= 1 << a
    iface = P.source_mask | P.target_mask
    rep = {}
    if dedup_twins:
        first_of = {}
        for p in pts:
            if iface >> p & 1:
                rep[p] = p
            else:
                rep[p] = first_of.setdefault((P.up[p], P.down[p]), p)
    else:
        rep = {p: p for p in pts}

    out: list[int] = []

    def extend(placed: int):
        if len(out) == len(pts):
            yield tuple(out)
            return
        used_reps = set()
        for p in pts:
            if placed >> p & 1 or pred[p] & ~placed:
                continue
            r = rep[p]
            if r in used_reps:
                continue
            used_reps.add(r)
            out.append(p)
            yield from extend(placed | (1 << p))
            out.pop()

    yield from extend(0)


def _split(P: Iposet, phi: CharFn, order: Sequence[int]):
    qpts = list(bits(phi.past | phi.cut))
    rpts = list(bits(phi.cut | phi.future))
    Q = restrict(P, qpts, P.sources, order)
    R = restrict(P, rpts, order, P.targets)
    return Q, R


def split_by_char_fn(P: Iposet, phi: CharFn, middle_order: Sequence[int]):
    """Parts ``(Q, R)`` with ``glue(Q, R)`` equal to ``P`` up to the point map of
    :func:`reassembly_order`."""
    if not is_valid_char_fn(P, phi):
        raise IncompatibleOrdering("not a valid characteristic function")
    order = list(middle_order)
    if sorted(order) != list(bits(phi.cut)):
        raise IncompatibleOrdering("middle order is not a permutation of the Cut points")
    pos = {p: i for i, p in enumerate(order)}
    for chain in _interface_chains(P, phi.cut):
        if any(pos[a] > pos[b] for a, b in zip(chain, chain[1:])):
            raise IncompatibleOrdering("middle order disagrees with interface numbering")
    return _split(P, phi, order)


def reassembly_order(phi: CharFn) -> list[int]:
    """Point of ``P`` at each index of ``glue(*split_by_char_fn(P, phi, ...))``."""
    return list(bits(phi.past | phi.cut)) + list(bits(phi.future))


# -- parallel splits -------------------------------------------------------------


def par_splits(P: Iposet) -> Iterator[tuple[Iposet, Iposet]]:
    """All ``(A, B)`` with ``par(A, B)`` isomorphic to ``P`` and both non-empty,
    up to permuting isomorphic interface-free components."""
    comps = component_masks(P)
    if len(comps) < 2:
        return
    src_pos = {p: i for i, p in enumerate(P.sources)}
    tgt_pos = {p: i for i, p in enumerate(P.targets)}
    iface = P.source_mask | P.target_mask
    bound = [c for c in comps if c & iface]
    free = [c for c in comps if not c & iface]
    groups: dict = {}
    for c in free:
        groups.setdefault(canonical_form(restrict(P, list(bits(c)))), []).append(c)
    free_groups = list(groups.values())

    def bound_assignments():
        for a in range(P.dom + 1):
            for b in range(P.cod + 1):
                left = 0
                ok = True
                for c in bound:
                    ins = [src_pos[p] < a for p in bits(c) if p in src_pos]
                    ins += [tgt_pos[p] < b for p in bits(c) if p in tgt_pos]
                    if all(ins):
                        left |= c
                    elif any(ins):
                        ok = False
                        break
                if ok:
                    yield left

    def free_choices(i):
        if i == len(free_groups):
            yield 0
            return
        grp = free_groups[i]
        for k in range(len(grp) + 1):
            chosen = 0
            for c in grp[:k]:
                chosen |= c
            for rest in free_choices(i + 1):
                yield chosen | rest

    full = P.all_mask
    for left_bound in bound_assignments():
        for left_free in free_choices(0):
            left = left_bound | left_free
            if left == 0 or left == full:
                continue
            right = full & ~left
            A = restrict(
                P,
                list(bits(left)),
                [p for p in P.sources if left >> p & 1],
                [p for p in P.targets if left >> p & 1],
            )
            B = restrict(
                P,
                list(bits(right)),
                [p for p in P.sources if right >> p & 1],
                [p for p in P.targets if right >> p & 1],
            )
            yield A, B


# -- gluing-parallel recognition -------------------------------------------------

_GP_MEMO: dict = {}
_LEVEL_MEMO: dict = {}


def _search_gp(P: Iposet):
    for A, B in par_splits(P):
        if _gp(A) and _gp(B):
            return ("par", A, B)
    if quick_reject_gluing(P):
        return None
    fns = sorted(enumerate_char_fns(P), key=lambda f: (f.cut.bit_count(), f))
    for phi in fns:
        for order in middle_orders(P, phi):
            Q, R = _split(P, phi, order)
            if _gp(Q) and _gp(R):
                return ("glue", Q, R)
    return None


def _gp_entry(P: Iposet):
    """Return ``(canonical representative, witness)``; witness ``None`` if not gp."""
    key, order = canonical_labelling(P)
    hit = _GP_MEMO.get(key)
    if hit is not None:
        return hit
    Pc = relabel(P, order)
    witness = ("leaf",) if P.n <= 1 else _search_gp(Pc)
    entry = (Pc, witness)
    _GP_MEMO[key] = entry
    return entry


def _gp(P: Iposet) -> bool:
    if P.n <= 1:
        return True
    if not is_interface_consistent(P):
        return False
    return _gp_entry(P)[1] is not None


def is_gp(P: Iposet) -> bool:
    """Whether ``P`` is generated from the empty iposet and the four singletons."""
    return _gp(P)


def clear_memo() -> None:
    _GP_MEMO.clear()
    _LEVEL_MEMO.clear()


# -- certificates ---------------------------------------------------------------


LEAVES = ("empty", "s00", "s01", "s10", "s11")


@dataclass(frozen=True)
class GpTerm:
    """Term over the empty iposet and the four singletons.

    ``s{i}{j}``: ``i`` is 1 if the point is a source, ``j`` if it is a target.
    """

    op: str
    children: tuple = ()

    def __str__(self) -> str:
        if self.op in LEAVES:
            return self.op
        return f"{self.op}({','.join(str(c) for c in self.children)})"

    @staticmethod
    def leaf(P: Iposet) -> "GpTerm":
        if P.n == 0:
            return GpTerm("empty")
        return GpTerm(f"s{int(bool(P.sources))}{int(bool(P.targets))}")

    @staticmethod
    def node(op: str, left: "GpTerm", right: "GpTerm") -> "GpTerm":
        kids = []
        for t in (left, right):
            kids.extend(t.children if t.op == op else (t,))
        return GpTerm(op, tuple(kids))


def evaluate(term: GpTerm) -> Iposet:
    if term.op == "empty":
        return EMPTY
    if term.op in LEAVES:
        return singleton(term.op[1] == "1", term.op[2] == "1")
    parts = [evaluate(c) for c in term.children]
    result = parts[0]
    op = glue if term.op == "glue" else par
    for p in parts[1:]:
        result = op(result, p)
    return result


def parse_term(text: str) -> GpTerm:
    text = text.replace(" ", "")
    pos = 0

    def parse():
        nonlocal pos
        for leaf in LEAVES:
            if text.startswith(leaf, pos):
                pos += len(leaf)
                return GpTerm(leaf)
        for op in ("glue", "par"):
            if text.startswith(op + "(", pos):
                pos += len(op) + 1
                kids = [parse()]
                while text.startswith(",", pos):
                    pos += 1
                    kids.append(parse())
                if not text.startswith(")", pos):
                    raise ValueError(f"expected ')' at {pos}")
                if len(kids) < 2:
                    raise ValueError(f"{op} needs at least two arguments")
                pos += 1
                return GpTerm(op, tuple(kids))
        raise ValueError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")

    term = parse()
    if pos != len(text):
        raise ValueError(f"trailing input at {pos}")
    return term


def gp_term(P: Iposet) -> Optional[GpTerm]:
    if not _gp(P):
        return None
    if P.n <= 1:
        return GpTerm.leaf(P)
    _, witness = _gp_entry(P)
    kind, A, B = witness
    return GpTerm.node(kind, gp_term(A), gp_term(B))


# -- hierarchy levels -----------------------------------------------------------

INF = float("inf")


def _levels(P: Iposet):
    """``(level, par_level, glue_level)`` or ``None`` when ``P`` is not gp.

    ``level`` is the least i with P in S_i, ``par_level`` the least i with P in
    the par-closure of S_i and ``glue_level`` the least i with P in the
    glue-closure of that par-closure.
    """
    if P.n <= 1:
        return (0, 0, 0)
    if not is_interface_consistent(P):
        return None
    key, order = canonical_labelling(P)
    if key in _LEVEL_MEMO:
        return _LEVEL_MEMO[key]
    Pc = relabel(P, order)
    best_par = INF
    for A, B in par_splits(Pc):
        la, lb = _levels(A), _levels(B)
        if la is not None and lb is not None:
            best_par = min(best_par, max(la[1], lb[1]))
    best_glue = INF
    if not quick_reject_gluing(Pc):
        for phi in enumerate_char_fns(Pc):
            for order2 in middle_orders(Pc, phi):
                Q, R = _split(Pc, phi, order2)
                lq = _levels(Q)
                if lq is None or lq[2] >= best_glue:
                    continue
                lr = _levels(R)
                if lr is not None:
                    best_glue = min(best_glue, max(lq[2], lr[2]))
    gl = min(best_par, best_glue)
    if gl == INF:
        result = None
    else:
        lvl = gl + 1
        result = (lvl, min(lvl, best_par), gl)
    _LEVEL_MEMO[key] = result
    return result


def gp_level(P: Iposet) -> Optional[int]:
    """Least ``i`` with ``P`` in ``S_i``; ``None`` if ``P`` is not gluing-parallel."""
    lv = _levels(P)
    return None if lv is None else int(lv[0])


def build_witness(n: int) -> Iposet:
    """Separator posets: ``P1`` is a two-chain and ``P(k+1) = . * (Pk (x) Pk)``."""
    if n < 1:
        raise ValueError("witness index starts at 1")
    point = singleton(False, False)
    P = glue(point, point)
    for _ in range(n - 1):
        P = glue(point, par(P, P))
    return P
