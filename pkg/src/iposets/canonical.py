"""Canonical labelling of iposets.

Individualisation-refinement: vertices start coloured by their interface
positions and up/down degrees, colours are refined to an equitable partition
over the up/down relation, and the first non-singleton cell is branched on.
Interchangeable twins (same up- and down-set, no interface role) are branched
on only once. The key is the least leaf encoding, so it depends only on the
isomorphism class.
"""

from __future__ import annotations

from .core import Iposet, bits

_CACHE: dict = {}
_CACHE_LIMIT = 1 << 19


def _rank(values):
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def _refine(colors, up, down, n):
    k = max(colors) + 1
    while k < n:
        cells = [0] * k
        for v in range(n):
            cells[colors[v]] |= 1 << v
        sigs = []
        for v in range(n):
            u = up[v]
            d = down[v]
            sigs.append(
                (
                    colors[v],
                    tuple((u & c).bit_count() for c in cells),
                    tuple((d & c).bit_count() for c in cells),
                )
            )
        new = _rank(sigs)
        k2 = max(new) + 1
        colors = new
        if k2 == k:
            break
        k = k2
    return colors


def _labelling(P: Iposet):
    n = P.n
    up, down = P.up, P.down
    sidx = [-1] * n
    tidx = [-1] * n
    for i, p in enumerate(P.sources):
        sidx[p] = i
    for i, p in enumerate(P.targets):
        tidx[p] = i
    colors = _rank(
        [(sidx[v], tidx[v], down[v].bit_count(), up[v].bit_count()) for v in range(n)]
    )
    colors = _refine(colors, up, down, n)

    best = None
    best_order = None
    stack = [colors]
    while stack:
        colors = stack.pop()
        k = max(colors) + 1
        if k == n:
            order = [0] * n
            for v in range(n):
                order[colors[v]] = v
            rows = []
            for v in order:
                row = 0
                for w in bits(up[v]):
                    row |= 1 << colors[w]
                rows.append(row)
            enc = (
                tuple(rows),
                tuple(colors[p] for p in P.sources),
                tuple(colors[p] for p in P.targets),
            )
            if best is None or enc < best:
                best = enc
                best_order = order
            continue
        sizes = [0] * k
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(k) if sizes[c] > 1)
        members = [v for v in range(n) if colors[v] == target]
        tried = []
        branches = []
        for v in members:
            if any(up[v] == up[w] and down[v] == down[w] for w in tried):
                continue
            tried.append(v)
            new = []
            for u in range(n):
                c = colors[u]
                if c > target or (c == target and u != v):
                    c += 1
                new.append(c)
            branches.append(_refine(new, up, down, n))
        # reversed so that branches are explored in member order
        stack.extend(reversed(branches))
    return best, best_order


def _encode(n, enc) -> bytes:
    rows, spos, tpos = enc
    width = (n + 7) // 8
    return (
        bytes((n, len(spos), len(tpos)))
        + bytes(spos)
        + bytes(tpos)
        + b"".join(r.to_bytes(width, "little") for r in rows)
    )


def canonical_labelling(P: Iposet) -> tuple[bytes, list[int]]:
    """Return ``(key, order)``: ``order[i]`` is the point placed at position ``i``."""
    raw = (P.n, P.up, P.sources, P.targets)
    hit = _CACHE.get(raw)
    if hit is not None:
        return hit
    if P.n == 0:
        result = (_encode(0, ((), (), ())), [])
    else:
        enc, order = _labelling(P)
        result = (_encode(P.n, enc), order)
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[raw] = result
    return result


def canonical_form(P: Iposet) -> bytes:
    return canonical_labelling(P)[0]


def relabel(P: Iposet, order) -> Iposet:
    """Iposet with point ``order[i]`` renamed to ``i``."""
    pos = [0] * P.n
    for i, v in enumerate(order):
        pos[v] = i
    up = [0] * P.n
    for v in range(P.n):
        row = 0
        for w in bits(P.up[v]):
            row |= 1 << pos[w]
        up[pos[v]] = row
    return Iposet(P.n, up, [pos[p] for p in P.sources], [pos[p] for p in P.targets])


def canonical_representative(P: Iposet) -> Iposet:
    return relabel(P, canonical_labelling(P)[1])


def from_key(key: bytes) -> Iposet:
    """Decode a canonical key back into its canonical representative."""
    n, ns, nt = key[0], key[1], key[2]
    spos = list(key[3:3 + ns])
    tpos = list(key[3 + ns:3 + ns + nt])
    width = (n + 7) // 8
    base = 3 + ns + nt
    up = [
        int.from_bytes(key[base + i * width:base + (i + 1) * width], "little")
        for i in range(n)
    ]
    return Iposet(n, up, spos, tpos)


def clear_cache() -> None:
    _CACHE.clear()
