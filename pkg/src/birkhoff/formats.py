"""Bit-exact text formats: tensor files and vertex archives.

TensorFile: line 1 is `d n Delta`; the body is the Delta-scaled integer
entries, n per line, row-major (axis 1 most significant).  `#` starts a
comment.  Written files always use the least Delta (the denominator LCM).

Archive: one record per line, tab-separated:
    tensor(TensorFile inline: "d n Delta e1 ... e_{n^d}")  N  permanent  Delta
    symmetric(0/1)  automorphism_order
Records are sorted by (N, canonical entry sequence); re-deriving every field
from the tensor reproduces the line byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from .stochastic import denominator_lcm
from .tensor import Tensor


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


def _tokens_with_positions(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 1
        for tok in line.split():
            col = line.index(tok, col - 1) + 1
            yield tok, ln, col
            col += len(tok)


def parse_tensor_text(text: str) -> Tensor:
    toks = list(_tokens_with_positions(text))
    if len(toks) < 3:
        raise FormatError("expected header `d n Delta`", line=1)
    vals = []
    for tok, ln, col in toks:
        try:
            vals.append(int(tok))
        except ValueError:
            raise FormatError(f"not an integer: {tok!r}", line=ln, column=col) from None
    d, n, delta = vals[0], vals[1], vals[2]
    if d < 1 or n < 1 or delta < 1:
        raise FormatError("header values must be positive", line=toks[0][1])
    body = vals[3:]
    if len(body) != n**d:
        ln = toks[-1][1] if toks else 1
        raise FormatError(
            f"expected {n**d} entries for d={d} n={n}, got {len(body)}", line=ln
        )
    return Tensor(d, n, tuple(Fraction(v, delta) for v in body))


def load_tensor(path) -> Tensor:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tensor_text(fh.read())


def tensor_to_text(t: Tensor) -> str:
    delta = denominator_lcm(t)
    scaled = [v * delta for v in t.entries]
    lines = [f"{t.dim} {t.order} {delta}"]
    for start in range(0, len(scaled), t.order):
        lines.append(" ".join(str(int(v)) for v in scaled[start : start + t.order]))
    return "\n".join(lines) + "\n"


def write_tensor(path, t: Tensor) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(tensor_to_text(t))


def tensor_inline(t: Tensor) -> str:
    delta = denominator_lcm(t)
    scaled = " ".join(str(int(v * delta)) for v in t.entries)
    return f"{t.dim} {t.order} {delta} {scaled}"


def parse_tensor_inline(field: str, line: int | None = None) -> Tensor:
    parts = field.split()
    if len(parts) < 3:
        raise FormatError("inline tensor needs `d n Delta` prefix", line=line)
    try:
        nums = [int(x) for x in parts]
    except ValueError as exc:
        raise FormatError(f"inline tensor: {exc}", line=line) from None
    d, n, delta = nums[0], nums[1], nums[2]
    body = nums[3:]
    if len(body) != n**d:
        raise FormatError(
            f"inline tensor: expected {n**d} entries, got {len(body)}", line=line
        )
    return Tensor(d, n, tuple(Fraction(v, delta) for v in body))


@dataclass(frozen=True)
class ArchiveRecord:
    tensor: Tensor
    n_support: int
    permanent: Fraction
    delta: int
    symmetric: bool
    automorphism_order: int

    def to_line(self) -> str:
        return "\t".join(
            [
                tensor_inline(self.tensor),
                str(self.n_support),
                str(self.permanent),
                str(self.delta),
                "1" if self.symmetric else "0",
                str(self.automorphism_order),
            ]
        )

    @staticmethod
    def from_line(line: str, lineno: int | None = None) -> "ArchiveRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 6:
            raise FormatError(f"expected 6 tab-separated fields, got {len(parts)}", line=lineno)
        tensor = parse_tensor_inline(parts[0], line=lineno)
        try:
            n_support = int(parts[1])
            permanent = Fraction(parts[2])
            delta = int(parts[3])
            symmetric = {"0": False, "1": True}[parts[4]]
            aut = int(parts[5])
        except (ValueError, KeyError) as exc:
            raise FormatError(f"bad archive field: {exc}", line=lineno) from None
        return ArchiveRecord(tensor, n_support, permanent, delta, symmetric, aut)


def write_archive(path, records: Iterable[ArchiveRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(rec.to_line() + "\n")


def read_archive(path) -> list[ArchiveRecord]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            out.append(ArchiveRecord.from_line(line, lineno))
    return out
