"""Reading and writing elements in the canonical text form.

One term per line, ``F^a H^b E^c | F^a H^b E^c : <series>``; the number of
``|``-separated monomials is the rank.  A sample file holds several elements
separated by blank lines; a block may start with ``@ label``.  ``#`` starts a
comment.  A block consisting of the single line ``0`` is the zero element and
then needs ``@ label rank=<n>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .elements import TensorElement, _add_into, make_element
from .series import parse_series

_MONO_RE = re.compile(r"^F\^(\d+)\s+H\^(\d+)\s+E\^(\d+)$")


class SampleFileError(ValueError):
    pass


def parse_monomial(text: str) -> tuple:
    m = _MONO_RE.match(text.strip())
    if not m:
        raise SampleFileError(f"bad monomial {text.strip()!r}; expected 'F^a H^b E^c'")
    return tuple(int(g) for g in m.groups())


def parse_element(text: str, algebra, rank: int | None = None) -> TensorElement:
    acc: dict = {}
    n = algebra.order
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line == "0":
            continue
        if ":" not in line:
            raise SampleFileError(f"missing ':' in term line {line!r}")
        legs_text, _, series_text = line.rpartition(":")
        key = tuple(parse_monomial(p) for p in legs_text.split("|"))
        if rank is None:
            rank = len(key)
        elif len(key) != rank:
            raise SampleFileError(f"term {line!r} has rank {len(key)}, expected {rank}")
        try:
            coeffs = parse_series(series_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise SampleFileError(f"bad series {series_text.strip()!r}: {exc}") from None
        for k, c in coeffs.items():
            if k < n:
                _add_into(acc, (key, k), c)
    if rank is None:
        raise SampleFileError("cannot infer the rank of an empty element")
    return make_element(algebra, rank, acc)


def render_element(t: TensorElement) -> str:
    return t.canonical()


@dataclass
class SampleSet:
    entries: list = field(default_factory=list)  # (label, element)

    def of_rank(self, rank: int) -> list:
        return [(label, x) for label, x in self.entries if x.rank == rank]

    def find(self, label: str):
        for name, x in self.entries:
            if name == label:
                return x
        raise KeyError(label)


def parse_samples(text: str, algebra) -> SampleSet:
    blocks, current = [], []
    for raw in text.splitlines():
        if raw.lstrip().startswith("#"):
            continue
        if raw.strip():
            current.append(raw)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    out = SampleSet()
    for i, block in enumerate(blocks, 1):
        label, rank = f"sample{i}", None
        if block[0].lstrip().startswith("@"):
            header = block[0].strip()[1:].split()
            block = block[1:]
            for word in header:
                if word.startswith("rank="):
                    rank = int(word[5:])
                elif label == f"sample{i}":
                    label = word
        for line in block:
            if line.lstrip().startswith("@"):
                raise SampleFileError(f"header {line.strip()!r} must open its block")
        body = "\n".join(block)
        out.entries.append((label, parse_element(body, algebra, rank)))
    return out


def load_samples(path: str, algebra) -> SampleSet:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SampleFileError(f"cannot read sample file {path}: {exc}") from None
    return parse_samples(text, algebra)


def render_samples(entries) -> str:
    chunks = []
    for label, x in entries:
        chunks.append(f"@ {label} rank={x.rank}\n{x.canonical()}")
    return "\n\n".join(chunks) + "\n"
