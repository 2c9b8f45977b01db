"""Text format for mechanism topology files.

A mechanism file is line oriented.  Lines whose first token starts with
``#`` are comments; blank lines separate nothing and are skipped.  The
format is:

    mechanism NAME
    leg 1: R || R || R || P
    rel 1 3 ||
    leg 2:
        8 1 1 1
        1 8 1 1
        1 1 8 1
        1 1 1 9
    platform moving:
        9 5
        5 9
    platform fixed:
        8 5
        5 8

A leg is written either inline as a joint string (joint letters separated
by relation symbols for the adjacent pairs) or as an explicit symmetric
matrix on the following lines.  Non adjacent pairs of a joint-string leg
default to the arbitrary relation and can be set with ``rel i j SYMBOL``
lines; a warning is emitted for pairs left at the default.  The platform
blocks relate the platform-adjacent joints of the legs (last joints on the
moving side, first joints on the fixed side); their diagonals name those
joints and must agree with the legs.

Relation cells accept either the numeric codes 0..5 or the symbols
``-`` (arbitrary), ``||`` (parallel), ``_|_`` (perpendicular), ``/``
(coaxial), ``#`` (coplanar) and ``*`` (common point).  Diagonal cells
accept ``R``/``P`` or 8/9.  Because ``#`` opens a comment at the start of
a line, a coplanar relation in the first column of a matrix row must be
written as the numeric code 4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from .topology import (
    MAX_LEG_JOINTS,
    JointKind,
    LegTopology,
    MechanismTopology,
    PlatformRelations,
    PlatformSide,
    RelationCode,
    TopologyError,
    validate_mechanism,
)

RELATION_SYMBOLS = {
    "-": RelationCode.ARBITRARY,
    "||": RelationCode.PARALLEL,
    "_|_": RelationCode.PERPENDICULAR,
    "/": RelationCode.COAXIAL,
    "#": RelationCode.COPLANAR,
    "*": RelationCode.COMMON_POINT,
}

SYMBOL_OF_RELATION = {code: sym for sym, code in RELATION_SYMBOLS.items()}

_KEYWORDS = ("mechanism", "leg", "platform", "rel")


class ParseError(ValueError):
    """Syntax or structure error in a mechanism file."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


def _tokenize(line: str, number: int) -> list[_Token]:
    return [
        _Token(m.group(), number, m.start() + 1)
        for m in re.finditer(r"\S+", line)
    ]


def _relation_cell(tok: _Token) -> RelationCode:
    if tok.text in RELATION_SYMBOLS:
        return RELATION_SYMBOLS[tok.text]
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError(f"{tok.text!r} is not a relation", tok.line, tok.col) from None
    try:
        return RelationCode(value)
    except ValueError:
        raise ParseError(f"{value} is not a relation code (0..5)", tok.line, tok.col) from None


def _kind_cell(tok: _Token) -> JointKind:
    if tok.text in ("R", "P"):
        return JointKind.from_letter(tok.text)
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError(f"{tok.text!r} is not a joint kind", tok.line, tok.col) from None
    if value == 8:
        return JointKind.REVOLUTE
    if value == 9:
        return JointKind.PRISMATIC
    raise ParseError(f"diagonal entry {value} is not a joint code (8, 9, R or P)", tok.line, tok.col)


class _LegDraft:
    """A leg being assembled: kinds plus sparse pair relations."""

    def __init__(self, label: int, header: _Token):
        self.label = label
        self.header = header
        self.kinds: list[JointKind] = []
        self.pairs: dict[tuple[int, int], RelationCode] = {}
        self.explicit: set[tuple[int, int]] = set()
        self.from_matrix = False
        self.rows: list[list[_Token]] = []

    def set_pair(self, i: int, j: int, code: RelationCode, explicit: bool) -> None:
        key = (min(i, j), max(i, j))
        self.pairs[key] = code
        if explicit:
            self.explicit.add(key)

    def build(self, on_warning: Callable[[str], None]) -> LegTopology:
        f = len(self.kinds)
        rels = [[RelationCode.ARBITRARY] * f for _ in range(f)]
        missing: list[tuple[int, int]] = []
        for i in range(1, f + 1):
            for j in range(i + 1, f + 1):
                key = (i, j)
                if key in self.pairs:
                    rels[i - 1][j - 1] = rels[j - 1][i - 1] = self.pairs[key]
                elif not self.from_matrix:
                    missing.append(key)
        if missing:
            pairs = ", ".join(f"({i},{j})" for i, j in missing)
            on_warning(
                f"leg {self.label}: joint pairs {pairs} have no stated relation, "
                "treating them as arbitrary"
            )
        try:
            return LegTopology(
                label=self.label,
                joints=tuple(self.kinds),
                relations=tuple(tuple(row) for row in rels),
            )
        except TopologyError as err:
            raise ParseError(str(err), self.header.line, self.header.col) from err


class _Parser:
    def __init__(self, text: str, on_warning: Callable[[str], None] | None):
        self.lines = text.splitlines()
        self.on_warning = on_warning or (lambda message: None)
        self.name: str | None = None
        self.name_token: _Token | None = None
        self.legs: list[LegTopology] = []
        self.platforms: dict[PlatformSide, PlatformRelations] = {}
        self.current_leg: _LegDraft | None = None
        self.current_platform: tuple[PlatformSide, _Token] | None = None
        self.platform_rows: list[list[_Token]] = []
        self.last_line = max(len(self.lines), 1)

    # -- line stream ------------------------------------------------------

    def _content_lines(self) -> Iterator[list[_Token]]:
        for number, raw in enumerate(self.lines, start=1):
            stripped = raw.lstrip()
            if not stripped or stripped.startswith("#"):
                continue
            yield _tokenize(raw, number)

    # -- block completion ---------------------------------------------------

    def _finish_open_block(self) -> None:
        if self.current_leg is not None:
            draft = self.current_leg
            self.current_leg = None
            if draft.from_matrix or draft.rows:
                self._finish_matrix_leg(draft)
            elif not draft.kinds:
                raise ParseError(
                    f"leg {draft.label} has no joints", draft.header.line, draft.header.col
                )
            else:
                self.legs.append(draft.build(self.on_warning))
        if self.current_platform is not None:
            side, header = self.current_platform
            rows = self.platform_rows
            self.current_platform = None
            self.platform_rows = []
            self.platforms[side] = self._finish_platform(side, header, rows)

    def _finish_matrix_leg(self, draft: _LegDraft) -> None:
        rows = draft.rows
        if not rows:
            raise ParseError(
                f"leg {draft.label} has no matrix rows", draft.header.line, draft.header.col
            )
        f = len(rows)
        for row in rows:
            if len(row) != f:
                raise ParseError(
                    f"matrix row has {len(row)} entries, expected {f}",
                    row[0].line,
                    row[0].col,
                )
        if f > MAX_LEG_JOINTS:
            raise ParseError(
                f"leg {draft.label} has {f} joints, maximum is {MAX_LEG_JOINTS}",
                draft.header.line,
                draft.header.col,
            )
        draft.kinds = [_kind_cell(rows[i][i]) for i in range(f)]
        for i in range(f):
            for j in range(f):
                if i == j:
                    continue
                code = _relation_cell(rows[i][j])
                key = (min(i, j) + 1, max(i, j) + 1)
                if key in draft.pairs and draft.pairs[key] != code:
                    raise ParseError(
                        f"entry ({i + 1},{j + 1}) = {SYMBOL_OF_RELATION[code]} conflicts "
                        f"with ({key[0]},{key[1]}) = {SYMBOL_OF_RELATION[draft.pairs[key]]}",
                        rows[i][j].line,
                        rows[i][j].col,
                    )
                draft.set_pair(key[0], key[1], code, explicit=True)
        draft.from_matrix = True
        self.legs.append(draft.build(self.on_warning))

    def _finish_platform(
        self, side: PlatformSide, header: _Token, rows: list[list[_Token]]
    ) -> PlatformRelations:
        if not rows:
            raise ParseError(f"platform {side.value} block has no rows", header.line, header.col)
        k = len(rows)
        for row in rows:
            if len(row) != k:
                raise ParseError(
                    f"matrix row has {len(row)} entries, expected {k}",
                    row[0].line,
                    row[0].col,
                )
        if k != len(self.legs):
            raise ParseError(
                f"platform {side.value} matrix is {k}x{k} but there are {len(self.legs)} legs",
                header.line,
                header.col,
            )
        diagonal = tuple(_kind_cell(rows[i][i]) for i in range(k))
        matrix = [[RelationCode.ARBITRARY] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                matrix[i][j] = _relation_cell(rows[i][j])
        for i in range(k):
            for j in range(i + 1, k):
                if matrix[i][j] != matrix[j][i]:
                    raise ParseError(
                        f"platform entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ",
                        rows[i][j].line,
                        rows[i][j].col,
                    )
        end = -1 if side is PlatformSide.MOVING else 0
        where = "ends" if side is PlatformSide.MOVING else "starts"
        for i, leg in enumerate(self.legs):
            if diagonal[i] is not leg.joints[end]:
                raise ParseError(
                    f"platform {side.value} diagonal {i + 1} is {diagonal[i].value} "
                    f"but leg {leg.label} {where} with {leg.joints[end].value}",
                    rows[i][i].line,
                    rows[i][i].col,
                )
        return PlatformRelations(
            side=side,
            diagonal=diagonal,
            matrix=tuple(tuple(row) for row in matrix),
        )

    # -- statements ---------------------------------------------------------

    def _require_colon(self, tokens: list[_Token], index: int) -> list[_Token]:
        """Split a trailing ':' off tokens[index], returning the remainder."""
        tok = tokens[index]
        if tok.text.endswith(":"):
            head = tok.text[:-1]
            rest = tokens[index + 1 :]
        elif index + 1 < len(tokens) and tokens[index + 1].text == ":":
            head = tok.text
            rest = tokens[index + 2 :]
        else:
            raise ParseError("expected ':'", tok.line, tok.col + len(tok.text))
        tokens[index] = _Token(head, tok.line, tok.col)
        return rest

    def _stmt_mechanism(self, tokens: list[_Token]) -> None:
        if self.name is not None:
            raise ParseError("duplicate mechanism line", tokens[0].line, tokens[0].col)
        if len(tokens) < 2:
            raise ParseError("mechanism needs a name", tokens[0].line, tokens[0].col)
        self.name = " ".join(t.text for t in tokens[1:])
        self.name_token = tokens[0]

    def _stmt_leg(self, tokens: list[_Token]) -> None:
        self._finish_open_block()
        if len(tokens) < 2:
            raise ParseError("leg needs a number", tokens[0].line, tokens[0].col)
        rest = self._require_colon(tokens, 1)
        label_tok = tokens[1]
        try:
            label = int(label_tok.text)
        except ValueError:
            raise ParseError(
                f"{label_tok.text!r} is not a leg number", label_tok.line, label_tok.col
            ) from None
        expected = len(self.legs) + 1
        if label != expected:
            raise ParseError(
                f"leg numbers must run 1, 2, ... in order; expected {expected}, got {label}",
                label_tok.line,
                label_tok.col,
            )
        draft = _LegDraft(label, tokens[0])
        self.current_leg = draft
        if rest:
            self._parse_joint_string(draft, rest)

    def _parse_joint_string(self, draft: _LegDraft, tokens: list[_Token]) -> None:
        expect_joint = True
        pending_rel: RelationCode | None = None
        for tok in tokens:
            if expect_joint:
                if tok.text not in ("R", "P"):
                    raise ParseError(
                        f"expected a joint letter (R or P), got {tok.text!r}", tok.line, tok.col
                    )
                draft.kinds.append(JointKind.from_letter(tok.text))
                if pending_rel is not None:
                    draft.set_pair(len(draft.kinds) - 1, len(draft.kinds), pending_rel, explicit=True)
                    pending_rel = None
                expect_joint = False
            else:
                if tok.text not in RELATION_SYMBOLS:
                    raise ParseError(
                        f"expected a relation symbol between joints, got {tok.text!r}",
                        tok.line,
                        tok.col,
                    )
                pending_rel = RELATION_SYMBOLS[tok.text]
                expect_joint = True
        if expect_joint:
            last = tokens[-1]
            raise ParseError("joint string ends with a relation", last.line, last.col)
        if len(draft.kinds) > MAX_LEG_JOINTS:
            raise ParseError(
                f"leg {draft.label} has {len(draft.kinds)} joints, maximum is {MAX_LEG_JOINTS}",
                draft.header.line,
                draft.header.col,
            )

    def _stmt_rel(self, tokens: list[_Token]) -> None:
        if self.current_leg is None or self.current_leg.rows:
            raise ParseError(
                "rel lines must follow a joint-string leg header", tokens[0].line, tokens[0].col
            )
        draft = self.current_leg
        if not draft.kinds:
            raise ParseError(
                "rel lines must follow a joint-string leg header", tokens[0].line, tokens[0].col
            )
        if len(tokens) != 4:
            raise ParseError("expected: rel I J SYMBOL", tokens[0].line, tokens[0].col)
        indices = []
        for tok in tokens[1:3]:
            try:
                value = int(tok.text)
            except ValueError:
                raise ParseError(f"{tok.text!r} is not a joint index", tok.line, tok.col) from None
            if not 1 <= value <= len(draft.kinds):
                raise ParseError(
                    f"joint index {value} out of range 1..{len(draft.kinds)}", tok.line, tok.col
                )
            indices.append(value)
        i, j = indices
        if i == j:
            raise ParseError("rel needs two different joints", tokens[1].line, tokens[1].col)
        draft.set_pair(i, j, _relation_cell(tokens[3]), explicit=True)

    def _stmt_platform(self, tokens: list[_Token]) -> None:
        self._finish_open_block()
        if len(tokens) < 2:
            raise ParseError(
                "expected 'platform moving:' or 'platform fixed:'", tokens[0].line, tokens[0].col
            )
        rest = self._require_colon(tokens, 1)
        side_tok = tokens[1]
        try:
            side = PlatformSide(side_tok.text)
        except ValueError:
            raise ParseError(
                f"platform side must be 'moving' or 'fixed', got {side_tok.text!r}",
                side_tok.line,
                side_tok.col,
            ) from None
        if rest:
            raise ParseError("platform rows start on the next line", rest[0].line, rest[0].col)
        if side in self.platforms:
            raise ParseError(
                f"duplicate platform {side.value} block", tokens[0].line, tokens[0].col
            )
        if not self.legs:
            raise ParseError(
                "platform blocks must come after the legs", tokens[0].line, tokens[0].col
            )
        self.current_platform = (side, tokens[0])

    # -- driver -------------------------------------------------------------

    def parse(self) -> MechanismTopology:
        for tokens in self._content_lines():
            head = tokens[0].text.split(":")[0]
            if self.name is None:
                if head != "mechanism":
                    raise ParseError(
                        "a mechanism file starts with 'mechanism NAME'",
                        tokens[0].line,
                        tokens[0].col,
                    )
                self._stmt_mechanism(tokens)
                continue
            if head == "mechanism":
                self._stmt_mechanism(tokens)
            elif head == "leg":
                self._stmt_leg(tokens)
            elif head == "rel":
                self._stmt_rel(tokens)
            elif head == "platform":
                self._stmt_platform(tokens)
            elif self.current_platform is not None:
                self.platform_rows.append(tokens)
            elif self.current_leg is not None:
                if self.current_leg.kinds and not self.current_leg.rows:
                    raise ParseError(
                        f"unexpected {tokens[0].text!r} after an inline leg",
                        tokens[0].line,
                        tokens[0].col,
                    )
                self.current_leg.rows.append(tokens)
            else:
                raise ParseError(
                    f"unexpected {tokens[0].text!r}", tokens[0].line, tokens[0].col
                )
        self._finish_open_block()
        if self.name is None:
            raise ParseError("a mechanism file starts with 'mechanism NAME'", self.last_line)
        for side in PlatformSide:
            if side not in self.platforms:
                raise ParseError(f"missing platform {side.value} block", self.last_line)
        mech = MechanismTopology(
            name=self.name,
            legs=tuple(self.legs),
            moving=self.platforms[PlatformSide.MOVING],
            fixed=self.platforms[PlatformSide.FIXED],
        )
        problems = validate_mechanism(mech)
        if problems:
            token = self.name_token
            raise ParseError("; ".join(problems), token.line if token else 1)
        return mech


def parse_mechanism_text(
    text: str, on_warning: Callable[[str], None] | None = None
) -> MechanismTopology:
    """Parse mechanism file text into a validated MechanismTopology."""
    return _Parser(text, on_warning).parse()


def parse_mechanism_file(
    path: str | Path, on_warning: Callable[[str], None] | None = None
) -> MechanismTopology:
    """Parse a mechanism file from disk."""
    return parse_mechanism_text(Path(path).read_text(encoding="utf-8"), on_warning)
