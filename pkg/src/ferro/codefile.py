"""Plain-text code files.

Layout::

    RMC 1
    field p=2 tower=1,2
    modulus 0,1
    modulus 1,1,1
    dims m=3 n=3 k=2
    shape 1,2,3
    delta 2

    matrix 1
    1 0 0
    ...

``shape`` and ``delta`` are optional.  Entries use the integer encoding of
field elements.  :func:`dumps` is canonical, so ``dumps(loads(text)) == text``
for any text that :func:`dumps` produced.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .code import RankMetricCode
from .ferrers import FerrersDiagram
from .gf import field_from_tower

MAGIC = "RMC 1"


class CodeFileError(ValueError):
    pass


def dumps(C: RankMetricCode) -> str:
    ctx = C.ctx
    lines = [MAGIC, f"field p={ctx.p} tower={','.join(map(str, ctx.tower))}"]
    lines += [f"modulus {','.join(map(str, mod))}" for mod in ctx.moduli]
    lines.append(f"dims m={C.m} n={C.n} k={C.k}")
    if C.shape is not None:
        lines.append(f"shape {','.join(map(str, C.shape.cols))}")
    if C.delta is not None:
        lines.append(f"delta {C.delta}")
    for t, M in enumerate(C.basis, start=1):
        lines.append("")
        lines.append(f"matrix {t}")
        lines += [" ".join(str(int(v)) for v in row) for row in M.data]
    return "\n".join(lines) + "\n"


def _expect(lines: list[str], pos: int, pattern: str, what: str) -> re.Match:
    if pos >= len(lines):
        raise CodeFileError(f"line {pos + 1}: expected {what}, found end of file")
    hit = re.fullmatch(pattern, lines[pos])
    if hit is None:
        raise CodeFileError(f"line {pos + 1}: expected {what}, found {lines[pos]!r}")
    return hit


def _ints(text: str, sep: str, where: int) -> list[int]:
    try:
        return [int(t) for t in text.split(sep)]
    except ValueError:
        raise CodeFileError(f"line {where}: malformed integer list {text!r}") from None


def loads(text: str) -> RankMetricCode:
    if "\r" in text:
        raise CodeFileError("code files use LF line endings")
    if not text.endswith("\n"):
        raise CodeFileError("missing final newline")
    lines = text[:-1].split("\n")
    pos = 0
    _expect(lines, pos, re.escape(MAGIC), f"{MAGIC!r} header")
    pos += 1
    hit = _expect(lines, pos, r"field p=(\d+) tower=([\d,]+)", "field header")
    p = int(hit.group(1))
    tower = _ints(hit.group(2), ",", pos + 1)
    pos += 1
    moduli = []
    for _ in tower:
        hit = _expect(lines, pos, r"modulus ([\d,]+)", "modulus line")
        moduli.append(_ints(hit.group(1), ",", pos + 1))
        pos += 1
    try:
        ctx = field_from_tower(p, moduli)
    except ValueError as exc:
        raise CodeFileError(f"bad field description: {exc}") from None
    if ctx.tower != tuple(tower):
        raise CodeFileError(f"tower {tower} disagrees with the moduli {ctx.tower}")
    hit = _expect(lines, pos, r"dims m=(\d+) n=(\d+) k=(\d+)", "dims line")
    m, n, k = (int(g) for g in hit.groups())
    pos += 1
    shape = delta = None
    if pos < len(lines) and lines[pos].startswith("shape "):
        hit = _expect(lines, pos, r"shape ([\d,]+)", "shape line")
        try:
            shape = FerrersDiagram(_ints(hit.group(1), ",", pos + 1), m)
        except ValueError as exc:
            raise CodeFileError(f"line {pos + 1}: {exc}") from None
        pos += 1
    if pos < len(lines) and lines[pos].startswith("delta "):
        delta = int(_expect(lines, pos, r"delta (\d+)", "delta line").group(1))
        pos += 1
    mats = []
    for t in range(1, k + 1):
        _expect(lines, pos, "", "blank line")
        _expect(lines, pos + 1, f"matrix {t}", f"'matrix {t}'")
        pos += 2
        rows = []
        for _ in range(m):
            _expect(lines, pos, r"\d+( \d+)*", "matrix row")
            row = _ints(lines[pos], " ", pos + 1)
            if len(row) != n:
                raise CodeFileError(f"line {pos + 1}: expected {n} entries, found {len(row)}")
            rows.append(row)
            pos += 1
        M = np.array(rows, dtype=np.int64).reshape(m, n)
        if M.size and M.max() >= ctx.order:
            raise CodeFileError(f"matrix {t}: entry outside GF({ctx.order})")
        mats.append(M)
    if pos != len(lines):
        raise CodeFileError(f"line {pos + 1}: unexpected trailing content")
    try:
        # shape violations are reported by verification, not rejected here
        return RankMetricCode(ctx, mats, m, n, shape=shape, delta=delta, check=False)
    except ValueError as exc:
        raise CodeFileError(str(exc)) from None


def read(path) -> RankMetricCode:
    return loads(Path(path).read_text(encoding="utf-8"))


def write(C: RankMetricCode, path) -> None:
    Path(path).write_text(dumps(C), encoding="utf-8", newline="\n")
