"""The ``.ipos`` text format.

    ipos v1
    points 3
    source 0
    target 2
    rel
    0 1
    1 2
    end

Relation lines may be any generating set; the reader closes them
transitively. The writer emits the full relation of the canonical
representative, sorted.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .canonical import canonical_representative
from .core import Iposet, IposetError, make_iposet


class FormatError(IposetError):
    pass


def _ints(words, line_no):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise FormatError(f"line {line_no}: expected integers, got {' '.join(words)!r}") from None


def parse_ipos(text: str) -> Iposet:
    lines = [
        (i + 1, ln.split("#", 1)[0].split())
        for i, ln in enumerate(text.splitlines())
    ]
    lines = [(i, w) for i, w in lines if w]
    it = iter(lines)

    def expect(keyword):
        try:
            no, words = next(it)
        except StopIteration:
            raise FormatError(f"unexpected end of input, expected {keyword!r}") from None
        if words[0] != keyword:
            raise FormatError(f"line {no}: expected {keyword!r}, got {words[0]!r}")
        return no, words[1:]

    no, rest = expect("ipos")
    if rest != ["v1"]:
        raise FormatError(f"line {no}: unsupported version {' '.join(rest)!r}")
    no, rest = expect("points")
    if len(rest) != 1:
        raise FormatError(f"line {no}: 'points' takes one count")
    (n,) = _ints(rest, no)
    no, rest = expect("source")
    sources = _ints(rest, no)
    no, rest = expect("target")
    targets = _ints(rest, no)
    expect("rel")
    pairs = []
    for no, words in it:
        if words == ["end"]:
            break
        if len(words) != 2:
            raise FormatError(f"line {no}: relation lines hold two point indices")
        pairs.append(tuple(_ints(words, no)))
    else:
        raise FormatError("missing 'end'")
    extra = next(it, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: content after 'end'")
    return make_iposet(n, pairs, sources, targets)


def format_ipos(P: Iposet, canonical: bool = True) -> str:
    if canonical:
        P = canonical_representative(P)
    out = [
        "ipos v1",
        f"points {P.n}",
        " ".join(["source"] + [str(p) for p in P.sources]),
        " ".join(["target"] + [str(p) for p in P.targets]),
        "rel",
    ]
    out.extend(f"{a} {b}" for a, b in P.relation_pairs())
    out.append("end")
    return "\n".join(out) + "\n"


def read_ipos(path: Union[str, Path]) -> Iposet:
    return parse_ipos(Path(path).read_text())


def write_ipos(P: Iposet, path: Union[str, Path]) -> None:
    Path(path).write_text(format_ipos(P))
