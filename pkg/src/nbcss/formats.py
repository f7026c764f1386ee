"""Text formats for binary and field matrices.

dense
    Optional ``# rows cols`` line, then one row per line of space-separated
    0/1 entries.  Other ``#`` lines are comments.
alist
    MacKay's sparse format with 1-based indices; zero padding optional on
    input, always written on output.
field hex grid
    Header ``GF(2^m) poly=0x...``, a ``# rows cols`` line, then rows of
    polynomial-basis hex entries (``00`` is zero).
offset hex
    Bytes where ``00`` is zero and a nonzero byte h stands for alpha^(h-1);
    ``|`` separators are ignored.  Read-only.
"""

from __future__ import annotations

import re
from pathlib import Path

from .binmat import BinaryMatrix
from .errors import ParseError
from .extend import ExponentAssignment, FieldMatrix
from .field import FieldSpec, make_field

_DIMS = re.compile(r"^#\s*(\d+)\s+(\d+)\s*$")
_FIELD_HEADER = re.compile(r"^GF\(2\^(\d+)\)\s+poly=(0[xX][0-9a-fA-F]+|\d+)\s*$")


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines()]


def _body_and_dims(lines: list[str]) -> tuple[list[str], tuple[int, int] | None]:
    dims = None
    body = []
    for ln in lines:
        if not ln:
            continue
        if ln.startswith("#"):
            mt = _DIMS.match(ln)
            if mt and dims is None and not body:
                dims = (int(mt.group(1)), int(mt.group(2)))
            continue
        body.append(ln)
    return body, dims


def _row_tokens(ln: str) -> list[str]:
    toks = [t for t in ln.replace("|", " ").split() if t]
    # a single run like "0110" is accepted as well
    if len(toks) == 1 and len(toks[0]) > 1 and set(toks[0]) <= {"0", "1"}:
        return list(toks[0])
    return toks


def parse_dense(text: str) -> BinaryMatrix:
    body, dims = _body_and_dims(_lines(text))
    rows = []
    for ln in body:
        toks = _row_tokens(ln)
        if any(t not in ("0", "1") for t in toks):
            raise ParseError(f"non-binary entry in row {ln!r}")
        rows.append([int(t) for t in toks])
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError(f"ragged rows: widths {sorted(widths)}")
    cols = widths.pop() if widths else 0
    if dims is not None:
        if dims[0] != len(rows) or (rows and dims[1] != cols):
            raise ParseError(f"header says {dims[0]}x{dims[1]}, body is {len(rows)}x{cols}")
        cols = dims[1]
    return BinaryMatrix.from_supports(([j for j, b in enumerate(r) if b] for r in rows), cols)


def format_dense(mat: BinaryMatrix) -> str:
    out = [f"# {mat.rows} {mat.cols}"]
    for supp in mat.row_support:
        bits = ["0"] * mat.cols
        for j in supp:
            bits[j] = "1"
        out.append(" ".join(bits))
    return "\n".join(out) + "\n"


def parse_alist(text: str) -> BinaryMatrix:
    try:
        toks = [int(t) for t in text.split()]
    except ValueError as exc:
        raise ParseError(f"alist: {exc}") from None
    if len(toks) < 4:
        raise ParseError("alist: truncated header")
    cols, rows, maxc, maxr = toks[:4]
    pos = 4
    need = 4 + cols + rows
    if len(toks) < need:
        raise ParseError("alist: truncated weight lists")
    colw = toks[pos : pos + cols]
    pos += cols
    roww = toks[pos : pos + rows]
    pos += rows
    rest = toks[pos:]
    if len(rest) == cols * maxc + rows * maxr:
        cw, rw = [maxc] * cols, [maxr] * rows
    elif len(rest) == sum(colw) + sum(roww):
        cw, rw = colw, roww
    else:
        raise ParseError(f"alist: {len(rest)} index entries fit neither padded nor unpadded layout")

    def take(widths):
        nonlocal rest
        lists = []
        k = 0
        for w in widths:
            lists.append([x for x in rest[k : k + w] if x != 0])
            k += w
        rest = rest[k:]
        return lists

    col_lists = take(cw)
    row_lists = take(rw)
    for j, lst in enumerate(col_lists):
        if len(lst) != colw[j]:
            raise ParseError(f"alist: column {j + 1} weight {colw[j]} but {len(lst)} entries")
        if any(not 1 <= x <= rows for x in lst):
            raise ParseError(f"alist: column {j + 1} has a row index out of range")
    for i, lst in enumerate(row_lists):
        if len(lst) != roww[i]:
            raise ParseError(f"alist: row {i + 1} weight {roww[i]} but {len(lst)} entries")
        if any(not 1 <= x <= cols for x in lst):
            raise ParseError(f"alist: row {i + 1} has a column index out of range")
        if len(set(lst)) != len(lst):
            raise ParseError(f"alist: row {i + 1} repeats a column")
    if max(colw, default=0) > maxc or max(roww, default=0) > maxr:
        raise ParseError("alist: weight exceeds declared maximum")
    mat = BinaryMatrix.from_supports(([x - 1 for x in lst] for lst in row_lists), cols)
    from_cols = {(i - 1, j) for j, lst in enumerate(col_lists) for i in lst}
    if from_cols != set(mat.positions()):
        raise ParseError("alist: row and column lists disagree")
    return mat


def format_alist(mat: BinaryMatrix) -> str:
    cols_sup = mat.col_support()
    colw = [len(c) for c in cols_sup]
    roww = [len(r) for r in mat.row_support]
    maxc, maxr = max(colw, default=0), max(roww, default=0)

    def padded(idx, width):
        return " ".join(str(x + 1) for x in idx) + "".join(" 0" for _ in range(width - len(idx)))

    out = [f"{mat.cols} {mat.rows}", f"{maxc} {maxr}", " ".join(map(str, colw)), " ".join(map(str, roww))]
    out += [padded(c, maxc).strip() for c in cols_sup]
    out += [padded(r, maxr).strip() for r in mat.row_support]
    return "\n".join(out) + "\n"


def read_binary(path, fmt: str = "auto") -> BinaryMatrix:
    path = Path(path)
    text = path.read_text()
    if fmt == "auto":
        fmt = "alist" if path.suffix == ".alist" else "dense"
    if fmt == "alist":
        return parse_alist(text)
    if fmt == "dense":
        return parse_dense(text)
    raise ValueError(f"unknown format {fmt!r}")


def write_binary(path, mat: BinaryMatrix, fmt: str = "auto") -> None:
    path = Path(path)
    if fmt == "auto":
        fmt = "alist" if path.suffix == ".alist" else "dense"
    path.write_text(format_alist(mat) if fmt == "alist" else format_dense(mat))


# ---------------------------------------------------------------------------
# field matrices
# ---------------------------------------------------------------------------


def format_field_matrix(mat: FieldMatrix) -> str:
    F = mat.field
    width = (F.m + 3) // 4
    out = [f"GF(2^{F.m}) poly={F.poly:#x}", f"# {mat.rows} {mat.cols}"]
    for row in mat.to_dense():
        out.append(" ".join(f"{x:0{width}X}" for x in row))
    return "\n".join(out) + "\n"


def parse_field_matrix(text: str, field: FieldSpec | None = None) -> FieldMatrix:
    lines = [ln for ln in _lines(text) if ln]
    if not lines:
        raise ParseError("empty field matrix file")
    mt = _FIELD_HEADER.match(lines[0])
    if not mt:
        raise ParseError(f"bad header {lines[0]!r}; expected 'GF(2^m) poly=0x...'")
    m, poly = int(mt.group(1)), int(mt.group(2), 0)
    if field is None:
        field = make_field(m, poly)
    elif (field.m, field.poly) != (m, poly):
        raise ParseError(f"file is over GF(2^{m}) poly={poly:#x}, expected {field}")
    body, dims = _body_and_dims(lines[1:])
    grid = []
    for ln in body:
        try:
            grid.append([int(t, 16) for t in _row_tokens(ln)])
        except ValueError:
            raise ParseError(f"bad hex entry in row {ln!r}") from None
    widths = {len(r) for r in grid}
    if len(widths) > 1:
        raise ParseError(f"ragged rows: widths {sorted(widths)}")
    cols = widths.pop() if widths else 0
    if dims is not None:
        if dims[0] != len(grid) or (grid and dims[1] != cols):
            raise ParseError(f"header says {dims[0]}x{dims[1]}, body is {len(grid)}x{cols}")
        cols = dims[1]
    if any(not 0 <= x < field.order for r in grid for x in r):
        raise ParseError(f"entry out of range for {field}")
    return FieldMatrix.from_dense(grid, field, cols)


def read_field_matrix(path, field: FieldSpec | None = None) -> FieldMatrix:
    return parse_field_matrix(Path(path).read_text(), field)


def parse_offset_hex(text: str, modulus: int = 255) -> tuple[BinaryMatrix, dict[tuple[int, int], int]]:
    """Read a byte grid in the offset convention: 00 -> 0, h -> alpha^(h - 1).

    Returns the support and the exponent of every nonzero entry.  For
    0x01 -> alpha^0, 0x02 -> alpha^1 and 0x10 -> alpha^15 to all hold, the
    byte cannot be a polynomial-basis value, so only exponents are recovered.
    """
    body, _ = _body_and_dims(_lines(text))
    grid = []
    for ln in body:
        row = []
        for t in _row_tokens(ln):
            if not re.fullmatch(r"[0-9a-fA-F]{2}", t):
                raise ParseError(f"expected two hex digits, got {t!r}")
            row.append(int(t, 16))
        grid.append(row)
    widths = {len(r) for r in grid}
    if len(widths) > 1:
        raise ParseError(f"ragged rows: widths {sorted(widths)}")
    cols = widths.pop() if widths else 0
    exps = {(i, j): (h - 1) % modulus for i, row in enumerate(grid) for j, h in enumerate(row) if h}
    supp = BinaryMatrix.from_supports(([j for j, h in enumerate(r) if h] for r in grid), cols)
    return supp, exps


def offset_hex_assignment(gamma_text: str, delta_text: str, modulus: int = 255):
    """Both offset-hex grids as (support of Gamma, support of Delta, ExponentAssignment)."""
    sg, e = parse_offset_hex(gamma_text, modulus)
    sd, f = parse_offset_hex(delta_text, modulus)
    return sg, sd, ExponentAssignment(e, f, modulus)
