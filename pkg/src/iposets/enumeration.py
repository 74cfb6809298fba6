"""Isomorphism-free generation of posets and iposets, gp closures and the census."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .algebra import glue, par
from .canonical import canonical_form, from_key
from .core import EMPTY, Iposet, IposetError, bits, singleton
from .recognition import is_gp, is_interval_order, is_sp, order_ideals

POSET_CAP = 8
POSET_HARD_CAP = 10
IPOSET_CAP = 7
IPOSET_HARD_CAP = 8
CLOSURE_CAP = 7
CLASSES = ("GP", "GPI", "IO", "IP", "P", "SP")


class SizeCapExceeded(IposetError):
    pass


def _check_cap(n: int, cap: int, hard: int, extended: bool, what: str) -> None:
    if n < 0:
        raise SizeCapExceeded(f"{what}: size must be non-negative")
    limit = hard if extended else cap
    if n > limit:
        hint = "" if extended or n > hard else " (pass extended=True to raise the cap)"
        raise SizeCapExceeded(f"{what}: n={n} exceeds cap {limit}{hint}")


# -- posets -----------------------------------------------------------------------

_POSET_LEVELS: dict[int, list[bytes]] = {0: [canonical_form(EMPTY)]}


def _poset_keys(n: int) -> list[bytes]:
    """Canonical keys of all posets on ``n`` points, sorted.

    Each level extends the previous one by a new maximal point whose
    down-set is any order ideal; duplicates are removed by canonical key.
    """
    if n in _POSET_LEVELS:
        return _POSET_LEVELS[n]
    parents = _poset_keys(n - 1)
    seen = set()
    new_bit = 1 << (n - 1)
    for key in parents:
        P = from_key(key)
        for ideal in order_ideals(P):
            up = [r | new_bit if ideal >> x & 1 else r for x, r in enumerate(P.up)]
            up.append(0)
            seen.add(canonical_form(Iposet(n, up)))
    _POSET_LEVELS[n] = sorted(seen)
    return _POSET_LEVELS[n]


def enumerate_posets(n: int, extended: bool = False) -> Iterator[Iposet]:
    """One canonical representative of each poset on ``n`` points."""
    _check_cap(n, POSET_CAP, POSET_HARD_CAP, extended, "enumerate_posets")
    for key in _poset_keys(n):
        yield from_key(key)


# -- automorphisms and interfaces ---------------------------------------------


def automorphisms(P: Iposet) -> list[tuple]:
    """All order automorphisms of the underlying poset of ``P`` as tuples ``g[x]``."""
    n = P.n
    up, down = P.up, P.down
    prof = [(up[x].bit_count(), down[x].bit_count()) for x in range(n)]
    cands = [[y for y in range(n) if prof[y] == prof[x]] for x in range(n)]
    out = []
    g = [-1] * n
    used = 0
    placed = 0

    def image(mask):
        m = 0
        for z in bits(mask):
            m |= 1 << g[z]
        return m

    def step(x):
        nonlocal used, placed
        if x == n:
            out.append(tuple(g))
            return
        for y in cands[x]:
            if used >> y & 1:
                continue
            if image(up[x] & placed) != up[y] & used:
                continue
            if image(down[x] & placed) != down[y] & used:
                continue
            g[x] = y
            used |= 1 << y
            placed |= 1 << x
            step(x + 1)
            used &= ~(1 << y)
            placed &= ~(1 << x)
        g[x] = -1

    step(0)
    return out


def _orbit_reps(group: list[tuple], candidates: list[int]) -> list[int]:
    reps = []
    covered = set()
    for x in candidates:
        if x in covered:
            continue
        reps.append(x)
        covered.update(g[x] for g in group)
    return reps


def _sequences(group, candidates):
    """Orbit representatives of ordered sequences of distinct candidates,
    paired with their pointwise stabilisers."""
    yield (), group

    def grow(seq, grp, remaining):
        for x in _orbit_reps(grp, remaining):
            stab = [g for g in grp if g[x] == x]
            nseq = seq + (x,)
            yield nseq, stab
            yield from grow(nseq, stab, [y for y in remaining if y != x])

    yield from grow((), group, candidates)


def interface_choices(P: Iposet) -> Iterator[tuple[tuple, tuple]]:
    """Source/target sequences on ``P`` up to automorphisms of its order."""
    group = automorphisms(P)
    mins = list(bits(P.minimal_mask()))
    maxs = list(bits(P.maximal_mask()))
    for src, stab in _sequences(group, mins):
        for tgt, _ in _sequences(stab, maxs):
            yield src, tgt


def enumerate_iposets(n: int, extended: bool = False) -> Iterator[Iposet]:
    """One representative of each iposet on ``n`` points."""
    _check_cap(n, IPOSET_CAP, IPOSET_HARD_CAP, extended, "enumerate_iposets")
    for P in enumerate_posets(n, extended=True):
        for src, tgt in interface_choices(P):
            yield Iposet(n, P.up, src, tgt, P.down)


# -- closures -----------------------------------------------------------------------

GENERATORS = (EMPTY,) + tuple(singleton(a, b) for a in (False, True) for b in (False, True))


def closure(
    seed: Iterable[Iposet],
    max_points: int,
    use_glue: bool = True,
    use_par: bool = True,
) -> dict[bytes, Iposet]:
    """Least set containing ``seed`` and closed under the chosen operations,
    restricted to results with at most ``max_points`` points.

    Semi-naive fixpoint: every round combines the newly found iposets with
    everything known so far.
    """
    known: dict[bytes, Iposet] = {}
    for P in seed:
        if P.n <= max_points:
            known.setdefault(canonical_form(P), P)
    frontier = dict(known)
    while frontier:
        found: dict[bytes, Iposet] = {}
        by_dom: dict[int, list[Iposet]] = {}
        by_cod: dict[int, list[Iposet]] = {}
        for P in known.values():
            by_dom.setdefault(P.dom, []).append(P)
            by_cod.setdefault(P.cod, []).append(P)

        def add(R):
            k = canonical_form(R)
            if k not in known and k not in found:
                found[k] = R

        for new in frontier.values():
            for other in known.values():
                if use_par and new.n + other.n <= max_points:
                    add(par(new, other))
                    add(par(other, new))
            if use_glue:
                for other in by_dom.get(new.cod, ()):
                    if new.n + other.n - new.cod <= max_points:
                        add(glue(new, other))
                for other in by_cod.get(new.dom, ()):
                    if other.n + new.n - new.dom <= max_points:
                        add(glue(other, new))
        known.update(found)
        frontier = found
    return known


def generate_gp_closure(max_points: int) -> set[bytes]:
    """Canonical keys of every gp-iposet with at most ``max_points`` points."""
    _check_cap(max_points, CLOSURE_CAP, CLOSURE_CAP, False, "generate_gp_closure")
    return set(closure(GENERATORS, max_points))


def hierarchy_levels(generators: Iterable[Iposet], levels: int, max_points: int) -> list[set[bytes]]:
    """Key sets of the alternating hierarchy over ``generators``.

    Level 0 is the generator set, level ``i+1`` is the glue-closure of the
    par-closure of level ``i``, both bounded by ``max_points``.
    """
    current = {canonical_form(P): P for P in generators if P.n <= max_points}
    out = [set(current)]
    for _ in range(levels):
        pars = closure(current.values(), max_points, use_glue=False)
        current = closure(pars.values(), max_points, use_par=False)
        out.append(set(current))
    return out


# -- census -------------------------------------------------------------------------


class CensusMismatch(AssertionError):
    """Closure generation and filtered enumeration disagree."""


@dataclass
class CensusTable:
    rows: dict = field(default_factory=dict)

    def set(self, n: int, cls: str, count: int) -> None:
        self.rows.setdefault(n, {})[cls] = count

    def get(self, n: int, cls: str) -> Optional[int]:
        return self.rows.get(n, {}).get(cls)

    def to_tsv(self) -> str:
        lines = ["n\tclass\tcount"]
        for n in sorted(self.rows):
            for cls in sorted(self.rows[n]):
                lines.append(f"{n}\t{cls}\t{self.rows[n][cls]}")
        return "\n".join(lines) + "\n"


def _gp_chunk(keys: list[bytes]) -> int:
    return sum(1 for k in keys if is_gp(from_key(k)))


def _count_gp(items: list[Iposet], jobs: int) -> int:
    if jobs <= 1 or len(items) < 1000:
        return sum(1 for P in items if is_gp(P))
    import multiprocessing

    keys = [canonical_form(P) for P in items]
    size = max(1, len(keys) // (jobs * 8))
    chunks = [keys[i:i + size] for i in range(0, len(keys), size)]
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        return sum(pool.map(_gp_chunk, chunks))


def census(
    max_n: int,
    classes: Iterable[str] = CLASSES,
    jobs: int = 1,
    extended: bool = False,
    closure_max: int = 5,
) -> CensusTable:
    """Counts per class for ``n = 0..max_n``.

    For ``n <= closure_max`` the GP and GPI columns are computed twice, by
    closure generation and by filtering the enumeration, and must agree.
    """
    classes = sorted(set(classes))
    for c in classes:
        if c not in CLASSES:
            raise ValueError(f"unknown class {c!r}; expected a subset of {','.join(CLASSES)}")
    poset_cols = {"P", "SP", "IO", "GP"} & set(classes)
    iposet_cols = {"IP", "GPI"} & set(classes)
    if poset_cols:
        _check_cap(max_n, POSET_CAP, POSET_HARD_CAP, extended, "census")
    if iposet_cols:
        _check_cap(max_n, IPOSET_CAP, IPOSET_HARD_CAP, extended, "census")
    closure_n = min(closure_max, max_n, CLOSURE_CAP)
    closed = None
    if ({"GP", "GPI"} & set(classes)) and closure_n >= 0:
        closed = [from_key(k) for k in closure(GENERATORS, closure_n)]
    table = CensusTable()
    for n in range(max_n + 1):
        if poset_cols:
            posets = list(enumerate_posets(n, extended=True))
            if "P" in classes:
                table.set(n, "P", len(posets))
            if "SP" in classes:
                table.set(n, "SP", sum(1 for P in posets if is_sp(P)))
            if "IO" in classes:
                table.set(n, "IO", sum(1 for P in posets if is_interval_order(P)))
            if "GP" in classes:
                count = _count_gp(posets, jobs)
                if closed is not None and n <= closure_n:
                    direct = sum(1 for P in closed if P.n == n and P.is_poset())
                    if direct != count:
                        raise CensusMismatch(f"GP({n}): closure {direct} vs filter {count}")
                table.set(n, "GP", count)
        if iposet_cols:
            iposets = list(enumerate_iposets(n, extended=True))
            if "IP" in classes:
                table.set(n, "IP", len(iposets))
            if "GPI" in classes:
                count = _count_gp(iposets, jobs)
                if closed is not None and n <= closure_n:
                    direct = sum(1 for P in closed if P.n == n)
                    if direct != count:
                        raise CensusMismatch(f"GPI({n}): closure {direct} vs filter {count}")
                table.set(n, "GPI", count)
    return table


def extended_enabled() -> bool:
    """Opt-in switch for long-running runs, read from ``IPOSET_EXTENDED``."""
    return os.environ.get("IPOSET_EXTENDED", "") not in ("", "0")
