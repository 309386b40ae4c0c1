"""Line-oriented text formats for algebras and actions.

An algebra file:

    field gf 2          (or: field rationals)
    dim 4
    basis x u v w       (optional; defaults to e0, e1, ...)
    mul 0 0 1 1         (i j k coefficient; unlisted products are zero)

An action file:

    action
    begin B
    <algebra lines>
    end
    begin A
    <algebra lines>
    end
    left 0 0 0 1        (b-index a-index k coefficient)
    right 0 0 0 1       (a-index b-index k coefficient)

`use B <path>` or `use B canonical:<name>` may replace an inline block.
Serializers emit entries in lexicographic index order with coefficients as
plain strings, so emitted files re-parse to identical objects.
"""

from __future__ import annotations

import os

from .action import ActionData, make_action
from .algebra import Algebra, make_algebra
from .linalg import Field


class ParseError(ValueError):
    def __init__(self, message, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _clean_lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_field_tokens(tokens, line=None) -> Field:
    if not tokens:
        raise ParseError("missing field description", line)
    kind = tokens[0].lower()
    if kind in ("rationals", "q", "qq"):
        if len(tokens) != 1:
            raise ParseError("rationals take no parameter", line)
        return Field(None)
    if kind == "gf":
        if len(tokens) != 2:
            raise ParseError("expected: field gf <p>", line)
        try:
            return Field(int(tokens[1]))
        except ValueError as e:
            raise ParseError(str(e), line) from None
    raise ParseError(f"unknown field kind: {tokens[0]}", line)


def format_field(field: Field) -> str:
    return "rationals" if field.p is None else f"gf {field.p}"


def _parse_algebra_lines(lines) -> Algebra:
    field = None
    dim = None
    names = ()
    entries = {}
    for n, line in lines:
        toks = line.split()
        key = toks[0].lower()
        if key == "field":
            field = parse_field_tokens(toks[1:], n)
        elif key == "dim":
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("expected: dim <n>", n)
            dim = int(toks[1])
        elif key == "basis":
            names = tuple(toks[1:])
        elif key == "mul":
            if field is None or dim is None:
                raise ParseError("mul before field/dim", n)
            if len(toks) != 5:
                raise ParseError("expected: mul i j k coefficient", n)
            try:
                i, j, k = int(toks[1]), int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("indices must be integers", n) from None
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ParseError("index out of range", n)
            try:
                entries[(i, j, k)] = field.parse(toks[4])
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad coefficient: {e}", n) from None
        else:
            raise ParseError(f"unknown directive: {toks[0]}", n)
    if field is None or dim is None:
        raise ParseError("algebra needs field and dim")
    if names and len(names) != dim:
        raise ParseError("basis name count does not match dim")
    return make_algebra(field, dim, entries, names)


def parse_algebra(text: str) -> Algebra:
    lines = list(_clean_lines(text))
    if lines and lines[0][1].lower() == "action":
        raise ParseError("expected an algebra file, found an action file", lines[0][0])
    return _parse_algebra_lines(lines)


def format_algebra(A: Algebra) -> str:
    out = [f"field {format_field(A.field)}", f"dim {A.dim}"]
    if A.dim:
        out.append("basis " + " ".join(A.basis_names))
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in enumerate(A.table[i][j]):
                if c != 0:
                    out.append(f"mul {i} {j} {k} {A.field.format(c)}")
    return "\n".join(out) + "\n"


def _resolve_reference(ref: str, base_dir: str, line: int) -> Algebra:
    if ref.startswith("canonical:"):
        from .witness import canonical
        try:
            return canonical(ref.split(":", 1)[1])
        except ValueError as e:
            raise ParseError(str(e), line) from None
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_algebra(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}", line) from None


def parse_action(text: str, base_dir: str = ".") -> ActionData:
    lines = list(_clean_lines(text))
    if not lines or lines[0][1].lower() != "action":
        raise ParseError("action file must start with 'action'")
    algebras = {}
    left_entries = []
    right_entries = []
    idx = 1
    while idx < len(lines):
        n, line = lines[idx]
        toks = line.split()
        key = toks[0].lower()
        if key == "begin":
            if len(toks) != 2 or toks[1] not in ("A", "B"):
                raise ParseError("expected: begin A|B", n)
            tag = toks[1]
            block = []
            idx += 1
            while idx < len(lines) and lines[idx][1].lower() != "end":
                block.append(lines[idx])
                idx += 1
            if idx == len(lines):
                raise ParseError(f"unterminated block for {tag}", n)
            algebras[tag] = _parse_algebra_lines(block)
            idx += 1
        elif key == "use":
            if len(toks) != 3 or toks[1] not in ("A", "B"):
                raise ParseError("expected: use A|B <reference>", n)
            algebras[toks[1]] = _resolve_reference(toks[2], base_dir, n)
            idx += 1
        elif key in ("left", "right"):
            if len(toks) != 5:
                raise ParseError(f"expected: {key} i j k coefficient", n)
            try:
                i, j, k = int(toks[1]), int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("indices must be integers", n) from None
            (left_entries if key == "left" else right_entries).append((n, i, j, k, toks[4]))
            idx += 1
        else:
            raise ParseError(f"unknown directive: {toks[0]}", n)
    if "A" not in algebras or "B" not in algebras:
        raise ParseError("action file needs both A and B blocks")
    A, B = algebras["A"], algebras["B"]
    if A.field != B.field:
        raise ParseError("A and B are over different fields")
    left = {}
    for n, b, a, k, cs in left_entries:
        if not (0 <= b < B.dim and 0 <= a < A.dim and 0 <= k < A.dim):
            raise ParseError("left index out of range", n)
        try:
            left[(b, a, k)] = A.field.parse(cs)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad coefficient: {e}", n) from None
    right = {}
    for n, a, b, k, cs in right_entries:
        if not (0 <= a < A.dim and 0 <= b < B.dim and 0 <= k < A.dim):
            raise ParseError("right index out of range", n)
        try:
            right[(a, b, k)] = A.field.parse(cs)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad coefficient: {e}", n) from None
    return make_action(B, A, left, right)


def format_action(act: ActionData) -> str:
    out = ["action", "begin B", format_algebra(act.B).rstrip("\n"), "end",
           "begin A", format_algebra(act.A).rstrip("\n"), "end"]
    for b in range(act.B.dim):
        for a in range(act.A.dim):
            for k, c in enumerate(act.left[b][a]):
                if c != 0:
                    out.append(f"left {b} {a} {k} {act.field.format(c)}")
    for a in range(act.A.dim):
        for b in range(act.B.dim):
            for k, c in enumerate(act.right[a][b]):
                if c != 0:
                    out.append(f"right {a} {b} {k} {act.field.format(c)}")
    return "\n".join(out) + "\n"


def detect_kind(text: str) -> str:
    for _n, line in _clean_lines(text):
        return "action" if line.lower() == "action" else "algebra"
    return "algebra"
