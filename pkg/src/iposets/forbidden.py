"""Induced-subposet search and mining of minimal non-gp posets."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .canonical import canonical_form
from .core import Iposet, delete_point, make_iposet
from .enumeration import POSET_CAP, POSET_HARD_CAP, _check_cap, enumerate_posets
from .fileformat import parse_ipos
from .recognition import is_gp

FIXTURE_NAMES = (
    ("NN", "nn"),
    ("N+", "nplus"),
    ("N-", "nminus"),
    ("3C", "3c"),
    ("LN", "ln"),
    ("F8", "f8"),
    ("F10a", "f10a"),
    ("F10b", "f10b"),
    ("F10c", "f10c"),
    ("F10d", "f10d"),
    ("F10e", "f10e"),
)


@dataclass(frozen=True)
class ForbiddenFixture:
    name: str
    n_points: int
    pairs: tuple

    @property
    def poset(self) -> Iposet:
        return make_iposet(self.n_points, self.pairs)


def find_embedding(host: Iposet, pattern: Iposet) -> Optional[list[int]]:
    """Injection ``pattern -> host`` preserving and reflecting the order, or ``None``."""
    m, n = pattern.n, host.n
    if m > n:
        return None
    if m == 0:
        return []
    pu, pd, hu, hd = pattern.up, pattern.down, host.up, host.down
    cands = [
        [y for y in range(n) if hu[y].bit_count() >= pu[x].bit_count() and hd[y].bit_count() >= pd[x].bit_count()]
        for x in range(m)
    ]
    # most constrained first, then stay connected to what is already placed
    order = []
    left = set(range(m))
    while left:
        placed = sum(1 << x for x in order)
        x = max(
            left,
            key=lambda v: (((pu[v] | pd[v]) & placed).bit_count(), (pu[v] | pd[v]).bit_count(), -len(cands[v])),
        )
        order.append(x)
        left.remove(x)
    f = [-1] * m

    def step(i, used):
        if i == m:
            return True
        x = order[i]
        for y in cands[x]:
            if used >> y & 1:
                continue
            ok = True
            for j in range(i):
                z = order[j]
                fz = f[z]
                if bool(pu[x] >> z & 1) != bool(hu[y] >> fz & 1) or bool(pd[x] >> z & 1) != bool(hd[y] >> fz & 1):
                    ok = False
                    break
            if ok:
                f[x] = y
                if step(i + 1, used | (1 << y)):
                    return True
        f[x] = -1
        return False

    return list(f) if step(0, 0) else None


def contains_induced(host: Iposet, pattern: Iposet) -> bool:
    """Whether ``pattern`` is an induced subposet of ``host`` (interfaces ignored)."""
    if pattern.n > host.n or pattern.n_relations > host.n_relations:
        return False
    return find_embedding(host, pattern) is not None


def known_forbidden() -> list[ForbiddenFixture]:
    """The eleven known minimal non-gp posets with at most ten points."""
    out = []
    data = resources.files("iposets") / "data"
    for name, stem in FIXTURE_NAMES:
        P = parse_ipos((data / f"{stem}.ipos").read_text())
        out.append(ForbiddenFixture(name, P.n, tuple(P.relation_pairs())))
    return out


def fixture(name: str) -> Iposet:
    for fx in known_forbidden():
        if fx.name == name:
            return fx.poset
    raise KeyError(name)


def is_minimal_non_gp(P: Iposet) -> bool:
    if is_gp(P):
        return False
    return all(is_gp(delete_point(P, x)) for x in range(P.n))


def minimal_forbidden(max_points: int, extended: bool = False) -> list[Iposet]:
    """All minimal non-gp posets with at most ``max_points`` points, by canonical key.

    Candidates already containing a smaller hit are skipped before the
    (expensive) gp test; minimality of each new hit is re-checked by point
    deletion.
    """
    _check_cap(max_points, POSET_CAP, POSET_HARD_CAP, extended, "minimal_forbidden")
    found: list[Iposet] = []
    for n in range(max_points + 1):
        level = []
        for P in enumerate_posets(n, extended=True):
            if any(contains_induced(P, F) for F in found):
                continue
            if is_gp(P):
                continue
            if not all(is_gp(delete_point(P, x)) for x in range(P.n)):
                raise AssertionError(f"non-gp poset {P!r} escaped the containment filter")
            level.append(P)
        found.extend(level)
    return sorted(found, key=lambda P: (P.n, canonical_form(P)))


def explaining_fixture(P: Iposet, fixtures=None) -> Optional[str]:
    """Name of the first known fixture contained in ``P``, if any."""
    for fx in fixtures or known_forbidden():
        if contains_induced(P, fx.poset):
            return fx.name
    return None


__all__ = [
    "ForbiddenFixture",
    "contains_induced",
    "explaining_fixture",
    "find_embedding",
    "fixture",
    "is_minimal_non_gp",
    "known_forbidden",
    "minimal_forbidden",
]
