"""Shared enumerations, brute-force oracles and hypothesis strategies."""

from functools import lru_cache
from itertools import combinations, permutations

from hypothesis import strategies as st

from iposets.core import Iposet, bits, make_iposet, restrict
from iposets.enumeration import enumerate_iposets, enumerate_posets


@lru_cache(maxsize=None)
def posets(n):
    return tuple(enumerate_posets(n))


@lru_cache(maxsize=None)
def iposets(n):
    return tuple(enumerate_iposets(n))


def posets_upto(n):
    return [P for k in range(n + 1) for P in posets(k)]


def iposets_upto(n):
    return [P for k in range(n + 1) for P in iposets(k)]


def brute_isomorphic(P, Q):
    """Try every bijection; only for tiny inputs."""
    if (P.n, P.dom, P.cod) != (Q.n, Q.dom, Q.cod):
        return False
    for perm in permutations(range(Q.n)):
        if any(perm[a] != b for a, b in zip(P.sources, Q.sources)):
            continue
        if any(perm[a] != b for a, b in zip(P.targets, Q.targets)):
            continue
        if all(P.less(x, y) == Q.less(perm[x], perm[y]) for x in range(P.n) for y in range(P.n)):
            return True
    return False


def brute_embeds(host, pattern):
    """Every injection pattern -> host; only for tiny inputs."""
    m = pattern.n
    for image in permutations(range(host.n), m):
        if all(pattern.less(x, y) == host.less(image[x], image[y]) for x in range(m) for y in range(m)):
            return True
    return False


def induced_subsets(P, k):
    for pts in combinations(range(P.n), k):
        yield restrict(P, list(pts))


def random_relabel(P, perm):
    """Rename point ``x`` to ``perm[x]``."""
    up = [0] * P.n
    for x in range(P.n):
        for y in bits(P.up[x]):
            up[perm[x]] |= 1 << perm[y]
    return Iposet(P.n, up, [perm[p] for p in P.sources], [perm[p] for p in P.targets])


@st.composite
def iposet_strategy(draw, max_points=6, min_points=0):
    """Random iposet: a random DAG on a random numbering, then random interfaces."""
    n = draw(st.integers(min_points, max_points))
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if draw(st.booleans()):
                pairs.append((a, b))
    P = make_iposet(n, pairs)
    perm = draw(st.permutations(range(n)))
    P = random_relabel(P, perm)
    mins = list(bits(P.minimal_mask()))
    maxs = list(bits(P.maximal_mask()))
    src = draw(st.lists(st.sampled_from(mins), unique=True)) if mins else []
    tgt = draw(st.lists(st.sampled_from(maxs), unique=True)) if maxs else []
    return make_iposet(n, P.relation_pairs(), src, tgt)


def posets_strategy(max_points=6):
    return iposet_strategy(max_points=max_points).map(lambda P: P.underlying())
