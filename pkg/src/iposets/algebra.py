"""Gluing and parallel composition, isomorphism and subsumption."""

from __future__ import annotations

import enum
from functools import reduce
from typing import Optional, Sequence

from .canonical import canonical_form, canonical_labelling, canonical_representative
from .core import (
    EMPTY,
    MAX_POINTS,
    Iposet,
    IposetError,
    Overflow,
    bits,
    identity,
    symmetry_from_permutation,
)

__all__ = [
    "ArityMismatch",
    "InternalLawViolation",
    "PreconditionNotSatisfied",
    "LaxOutcome",
    "glue",
    "par",
    "glue_many",
    "par_many",
    "canonical_form",
    "canonical_labelling",
    "canonical_representative",
    "is_isomorphic",
    "subsumes",
    "verify_lax_interchange",
    "commute_symmetries",
    "find_refinement",
]


class ArityMismatch(IposetError):
    pass


class InternalLawViolation(AssertionError):
    """A law that holds for all iposets failed; this is a bug, not an input error."""


class PreconditionNotSatisfied(IposetError):
    pass


def glue(P: Iposet, Q: Iposet) -> Iposet:
    """Gluing composition ``P * Q``.

    Points of ``P`` keep their indices; the non-source points of ``Q`` follow
    in ``Q``'s index order. Target ``k`` of ``P`` is identified with source
    ``k`` of ``Q``.
    """
    if P.cod != Q.dom:
        raise ArityMismatch(f"cannot glue {P.dom}->{P.cod} with {Q.dom}->{Q.cod}")
    n = P.n
    mapping = [0] * Q.n
    src = 0
    for k, q in enumerate(Q.sources):
        mapping[q] = P.targets[k]
        src |= 1 << q
    nxt = n
    fresh = 0
    for q in range(Q.n):
        if not src >> q & 1:
            mapping[q] = nxt
            fresh |= 1 << nxt
            nxt += 1
    if nxt > MAX_POINTS:
        raise Overflow(f"gluing result has {nxt} points")
    up = list(P.up)
    up.extend([0] * (nxt - n))
    tmask = P.target_mask
    for x in range(n):
        if not tmask >> x & 1:
            up[x] |= fresh
    for q in range(Q.n):
        row = Q.up[q]
        if row:
            img = 0
            for r in bits(row):
                img |= 1 << mapping[r]
            up[mapping[q]] |= img
    return Iposet(nxt, up, P.sources, [mapping[q] for q in Q.targets])


def par(P: Iposet, Q: Iposet) -> Iposet:
    """Parallel composition ``P (x) Q``: ``Q``'s points and interfaces shifted after ``P``'s."""
    n = P.n
    if n + Q.n > MAX_POINTS:
        raise Overflow(f"parallel result has {n + Q.n} points")
    up = P.up + tuple(r << n for r in Q.up)
    down = P.down + tuple(r << n for r in Q.down)
    return Iposet(
        n + Q.n,
        up,
        P.sources + tuple(q + n for q in Q.sources),
        P.targets + tuple(q + n for q in Q.targets),
        down,
    )


def glue_many(items: Sequence[Iposet]) -> Iposet:
    items = list(items)
    if not items:
        raise ValueError("glue_many needs at least one iposet")
    return reduce(glue, items)


def par_many(items: Sequence[Iposet]) -> Iposet:
    return reduce(par, items, EMPTY)


# -- matching -----------------------------------------------------------------


def _interface_map(P: Iposet, Q: Iposet):
    fixed = {}
    for a, b in zip(P.sources, Q.sources):
        fixed[a] = b
    for a, b in zip(P.targets, Q.targets):
        if fixed.setdefault(a, b) != b:
            return None
    if len(set(fixed.values())) != len(fixed):
        return None
    return fixed


def _match(P: Iposet, Q: Iposet, preserve: bool) -> Optional[dict]:
    """Bijection ``f: P -> Q`` fixing interfaces and reflecting (and, if
    ``preserve``, also preserving) the order."""
    if P.n != Q.n or P.dom != Q.dom or P.cod != Q.cod:
        return None
    if preserve and P.n_relations != Q.n_relations:
        return None
    if not preserve and P.n_relations < Q.n_relations:
        return None
    fixed = _interface_map(P, Q)
    if fixed is None:
        return None
    n = P.n
    pu, pd, qu, qd = P.up, P.down, Q.up, Q.down

    def fits(x, y):
        if preserve:
            return pu[x].bit_count() == qu[y].bit_count() and pd[x].bit_count() == qd[y].bit_count()
        return qu[y].bit_count() <= pu[x].bit_count() and qd[y].bit_count() <= pd[x].bit_count()

    free_q = [y for y in range(n) if y not in set(fixed.values())]
    cands = {}
    for x in range(n):
        if x in fixed:
            if not fits(x, fixed[x]):
                return None
            cands[x] = [fixed[x]]
        else:
            cands[x] = [y for y in free_q if fits(x, y)]
            if not cands[x]:
                return None
    order = sorted(range(n), key=lambda x: (len(cands[x]), -(pu[x] | pd[x]).bit_count()))

    f = [-1] * n
    used = 0
    pmask = 0

    def image(mask):
        out = 0
        for z in bits(mask):
            out |= 1 << f[z]
        return out

    def step(i):
        nonlocal used, pmask
        if i == n:
            return True
        x = order[i]
        for y in cands[x]:
            if used >> y & 1:
                continue
            # relations between y and already-placed images
            qd_y = qd[y] & used
            qu_y = qu[y] & used
            pd_x = image(pd[x] & pmask)
            pu_x = image(pu[x] & pmask)
            if preserve:
                if qd_y != pd_x or qu_y != pu_x:
                    continue
            elif qd_y & ~pd_x or qu_y & ~pu_x:
                continue
            f[x] = y
            used |= 1 << y
            pmask |= 1 << x
            if step(i + 1):
                return True
            used &= ~(1 << y)
            pmask &= ~(1 << x)
            f[x] = -1
        return False

    if step(0):
        return {x: f[x] for x in range(n)}
    return None


def is_isomorphic(P: Iposet, Q: Iposet) -> Optional[dict]:
    """An interface-preserving order isomorphism ``P -> Q``, or ``None``."""
    return _match(P, Q, preserve=True)


def subsumes(P: Iposet, Q: Iposet) -> Optional[dict]:
    """A witness for ``P`` being subsumed by ``Q`` (``P`` at least as ordered), or ``None``."""
    return _match(P, Q, preserve=False)


def isomorphic(P: Iposet, Q: Iposet) -> bool:
    """Isomorphism test via canonical keys."""
    return canonical_form(P) == canonical_form(Q)


# -- laws -----------------------------------------------------------------------


class LaxOutcome(enum.Enum):
    ISO_HOLDS = "iso"
    STRICT_SUBSUMPTION = "strict"


def verify_lax_interchange(P, P2, Q, Q2) -> LaxOutcome:
    """Compare ``(P (x) P2) * (Q (x) Q2)`` with ``(P * Q) (x) (P2 * Q2)``."""
    if P.cod != Q.dom or P2.cod != Q2.dom:
        raise ArityMismatch("lax interchange needs cod(P)=dom(Q) and cod(P')=dom(Q')")
    left = glue(par(P, P2), par(Q, Q2))
    right = par(glue(P, Q), glue(P2, Q2))
    if subsumes(left, right) is None:
        raise InternalLawViolation(f"{left!r} is not subsumed by {right!r}")
    if is_isomorphic(left, right) is not None:
        return LaxOutcome.ISO_HOLDS
    return LaxOutcome.STRICT_SUBSUMPTION


def block_swap(a: int, b: int) -> list[int]:
    """Permutation sending the first ``a`` positions after the last ``b``."""
    return [i + b if i < a else i - a for i in range(a + b)]


def commute_symmetries(P1: Iposet, P2: Iposet) -> tuple[Iposet, Iposet]:
    """Symmetries ``sigma``, ``tau`` with ``sigma * (P2 (x) P1) * tau`` isomorphic to ``P1 (x) P2``."""
    sigma = symmetry_from_permutation(block_swap(P1.dom, P2.dom))
    tau = symmetry_from_permutation(block_swap(P2.cod, P1.cod))
    return sigma, tau


def find_refinement(P: Iposet, Q: Iposet, U: Iposet, V: Iposet):
    """Search for a common refinement of ``P * Q`` and ``U * V``.

    Returns ``("left", R)`` with ``P * R ~ U`` and ``R * V ~ Q``, or
    ``("right", R)`` with ``U * R ~ P`` and ``R * Q ~ V``, or ``None``.
    """
    from .enumeration import enumerate_iposets

    if canonical_form(glue(P, Q)) != canonical_form(glue(U, V)):
        raise PreconditionNotSatisfied("P * Q and U * V are not isomorphic")
    want_u, want_q = canonical_form(U), canonical_form(Q)
    want_p, want_v = canonical_form(P), canonical_form(V)
    attempts = [
        ("left", U.n - P.n + P.cod, P.cod, V.dom, lambda R: (glue(P, R), want_u, glue(R, V), want_q)),
        ("right", P.n - U.n + U.cod, U.cod, Q.dom, lambda R: (glue(U, R), want_p, glue(R, Q), want_v)),
    ]
    for side, size, dom, cod, build in attempts:
        if size < max(dom, cod):
            continue
        for R in _iposets_with_arity(enumerate_iposets, size, dom, cod):
            a, ka, b, kb = build(R)
            if canonical_form(a) == ka and canonical_form(b) == kb:
                return side, R
    return None


def _iposets_with_arity(source, size, dom, cod):
    if dom == cod == size:
        # the identity first: it is the refinement in the degenerate case
        yield identity(size)
    for R in source(size):
        if R.dom == dom and R.cod == cod:
            yield R
