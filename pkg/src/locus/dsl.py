"""Text format for declaring sets, spaces, families, maps, atlases and
structures, and for asking questions about them.

A document is a sequence of statements, one per line by convention
(newlines are ordinary whitespace; statements are keyword-delimited).
Declarations bind a name; queries reference earlier declarations.

    set S = (0,1) u (2,3)
    set T = tail right period 1 pattern (0,1/2] from 0
    space X = line lom
    space Y = subspace of X carrier S
    space P = finite size 2 smops { {}, {0}, {0,1} }
    family K = translates base (-1,1) step 1 over Z
    family L = list (-inf,0), (-1,1) and translates base (0,2) step 1 from 0
    family C = chain start (-1,1) grow 1 1
    family M = masks { {0}, {0,1} }
    map f = piecewise { on (-inf,0]: x -> -x; on (0,inf): x -> 2x + 1 } from X to X
    map g = table { 0 -> 1, 1 -> 0 } from P to P
    atlas A = periodic ambient line lom base (-1,1) step 1
    atlas B = finite size 2 charts chart { {0} } chart { {0,1} }
    gts G = from P
    gts H = generated size 2 covers { {0}, {0,1} } and { {1} }

    classify set S in X
    classify family K in X
    classify family K in X as open
    classify map f
    classify space X
    derive Lo in X
    derive wcl of (0,1) in X
    glue A
    gts-check G
    generate-gt in P
    verify thm-cpar space X cover K seed (-1,1)
    random-suite backend finite iters 200 seed 7

Rationals are integers or quotients p/q; the endpoints inf and -inf are
spelled out.  Identifiers start with a letter and may contain letters,
digits and the characters _ + . - so class names like l+om and statement
ids like example-2.16 are single tokens; consequently binary + and -
inside affine rules need surrounding spaces, as printed.  Comments run
from # to the end of the line.

print_document emits the canonical form: parsing its output reproduces
the document exactly, and re-printing reproduces the text byte for
byte.  Set expressions are printed from the normal form of the set they
denote (left tail, then window content, then right tail), so any two
expressions for the same set print identically.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import finite
from .families import FiniteList, Translates, TranslatesDown, UnionOf
from .glue import FiniteAtlas, PeriodicAtlas
from .gts import from_space, generate_gt
from .intervals import EMPTY, NEG_INF, POS_INF, PeriodicSet, QInterval, \
    from_intervals, tail_left, tail_right, translate_list, union
from .maps import AffinePiece, FiniteMap, PiecewiseAffine, SpaceMap
from .properties import ChainCover
from .spaces import BUILTIN_CLASSES, FiniteSpace, LineSpace, line_space, \
    subspace
from .theorems import normalize_theorem_id


class DslError(ValueError):
    """Parse or resolution failure, located in the source text."""

    def __init__(self, message, line, col, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        suffix = ""
        if self.expected:
            suffix = " (expected " + " or ".join(self.expected) + ")"
        super().__init__(f"line {line}, column {col}: {message}{suffix}")


# ---------------------------------------------------------------------------
# lexer

_IDENT_START = set("abcdefghijklmnopqrstuvwxyz"
                   "ABCDEFGHIJKLMNOPQRSTUVWXYZ")
_IDENT_CONT = _IDENT_START | set("0123456789_+.-")
_PUNCT = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
          "{": "LBRACE", "}": "RBRACE", ",": "COMMA", "=": "EQUALS",
          ";": "SEMI", ":": "COLON", "+": "PLUS", "-": "MINUS"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(text):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("ARROW", "->", line, start_col))
            i, col = i + 2, col + 2
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 2
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(Token("NUMBER", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c in _IDENT_START:
            j = i + 1
            while j < n and text[j] in _IDENT_CONT:
                if text[j] == "-" and j + 1 < n and text[j + 1] == ">":
                    break
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c in _PUNCT:
            tokens.append(Token(_PUNCT[c], c, line, start_col))
            i, col = i + 1, col + 1
            continue
        raise DslError(f"unexpected character {c!r}", line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# document model
#
# Nodes hold semantic values (sets as PeriodicSet, rationals as
# Fraction) plus the names of the declarations they reference; nothing
# in a node depends on how the source text was spelled.

@dataclass(frozen=True)
class SetLit:
    value: PeriodicSet


@dataclass(frozen=True)
class MaskLit:
    elements: tuple


@dataclass(frozen=True)
class NameRef:
    name: str


@dataclass(frozen=True)
class LineSpaceSyn:
    class_name: str


@dataclass(frozen=True)
class SubspaceSyn:
    parent: str
    carrier: object


@dataclass(frozen=True)
class FiniteSpaceSyn:
    size: int
    smops: tuple  # of element tuples


@dataclass(frozen=True)
class ListPart:
    sets: tuple


@dataclass(frozen=True)
class TranslatesPart:
    base: object
    step: Fraction
    start: object  # int or None for a two-way run


@dataclass(frozen=True)
class TranslatesDownPart:
    base: object
    step: Fraction
    stop: int


@dataclass(frozen=True)
class MasksFamilySyn:
    masks: tuple  # of element tuples


@dataclass(frozen=True)
class ChainSyn:
    lo0: object
    dl: Fraction
    hi0: object
    dr: Fraction


@dataclass(frozen=True)
class FamilySyn:
    parts: tuple


@dataclass(frozen=True)
class PiecewiseSyn:
    pieces: tuple  # of (QInterval, slope, offset)
    source: str
    target: str


@dataclass(frozen=True)
class TableSyn:
    table: tuple
    source: str
    target: str


@dataclass(frozen=True)
class PeriodicAtlasSyn:
    class_name: str
    base: object
    step: Fraction


@dataclass(frozen=True)
class FiniteAtlasSyn:
    size: int
    charts: tuple  # of tuples of element tuples


@dataclass(frozen=True)
class GtsFromSyn:
    space: str


@dataclass(frozen=True)
class GtsGeneratedSyn:
    size: int
    covers: tuple  # of tuples of element tuples


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    body: object


@dataclass(frozen=True)
class ClassifySet:
    target: object
    space: str


@dataclass(frozen=True)
class ClassifyFamily:
    family: str
    space: str
    members: str = "smop"


@dataclass(frozen=True)
class ClassifyMap:
    name: str


@dataclass(frozen=True)
class ClassifySpace:
    name: str


@dataclass(frozen=True)
class Derive:
    what: str
    space: str


@dataclass(frozen=True)
class DeriveWcl:
    target: object
    space: str


@dataclass(frozen=True)
class GlueQuery:
    name: str


@dataclass(frozen=True)
class GtsCheckQuery:
    name: str


@dataclass(frozen=True)
class GenerateGtQuery:
    space: str


@dataclass(frozen=True)
class VerifyQuery:
    ident: str
    args: tuple = ()  # of (key, value) pairs in source order


@dataclass(frozen=True)
class RandomSuiteQuery:
    backend: str
    iters: int
    seed: int


@dataclass(frozen=True)
class Document:
    statements: tuple

    @property
    def declarations(self):
        return tuple(s for s in self.statements
                     if isinstance(s, Declaration))

    @property
    def queries(self):
        return tuple(s for s in self.statements
                     if not isinstance(s, Declaration))


_DERIVE_KINDS = ("Lo", "Ls", "Lwo", "Lswo", "closedsets")
_VERIFY_KEYS = ("space", "cover", "seed", "chain", "iters", "rng-seed",
                "samples")

_RESERVED = {
    "set", "space", "family", "map", "atlas", "gts", "classify", "derive",
    "glue", "gts-check", "generate-gt", "verify", "random-suite",
    "u", "empty", "tail", "left", "right", "period", "pattern", "from",
    "to", "in", "of", "as", "and", "line", "subspace", "carrier", "finite",
    "size", "smops", "list", "translates", "base", "step", "over", "Z",
    "down", "stop", "masks", "chain", "start", "grow", "piecewise", "on",
    "x", "table", "periodic", "ambient", "charts", "chart", "generated",
    "covers", "open", "wcl", "inf", "backend", "iters", "seed", "interval",
} | set(_DERIVE_KINDS)


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.names = {}  # name -> declaration kind

    # -- token plumbing --------------------------------------------------

    def peek(self, ahead=0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, message, tok=None, expected=()):
        tok = tok or self.peek()
        raise DslError(message, tok.line, tok.col, expected)

    def expect(self, kind, what):
        tok = self.peek()
        if tok.kind != kind:
            self.error(f"found {tok.text or 'end of input'!r}",
                       expected=(what,))
        return self.next()

    def keyword(self, *words):
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text not in words:
            self.error(f"found {tok.text or 'end of input'!r}",
                       expected=(" / ".join(repr(w) for w in words),))
        return self.next().text

    def at_keyword(self, *words):
        tok = self.peek()
        return tok.kind == "IDENT" and tok.text in words

    # -- atoms -------------------------------------------------------------

    def rational(self):
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        tok = self.expect("NUMBER", "a rational number")
        return sign * Fraction(tok.text)

    def endpoint(self):
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text == "inf":
            self.next()
            return POS_INF
        if tok.kind == "MINUS" and self.peek(1).text == "inf":
            self.next()
            self.next()
            return NEG_INF
        return self.rational()

    def integer(self, what="an integer"):
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        tok = self.expect("NUMBER", what)
        q = Fraction(tok.text)
        if q.denominator != 1:
            self.error(f"{tok.text} is not an integer", tok, (what,))
        return sign * int(q)

    def interval(self):
        tok = self.peek()
        if tok.kind == "LPAREN":
            lo_closed = False
        elif tok.kind == "LBRACK":
            lo_closed = True
        else:
            self.error(f"found {tok.text!r}", expected=("an interval",))
        self.next()
        lo = self.endpoint()
        self.expect("COMMA", "','")
        hi = self.endpoint()
        tok = self.peek()
        if tok.kind == "RPAREN":
            hi_closed = False
        elif tok.kind == "RBRACK":
            hi_closed = True
        else:
            self.error(f"found {tok.text!r}", expected=("')'", "']'"))
        self.next()
        try:
            return QInterval(lo, hi, lo_closed, hi_closed)
        except ValueError as e:
            self.error(str(e), tok)

    def at_interval(self):
        return self.peek().kind in ("LPAREN", "LBRACK")

    def set_expr(self):
        """Union of intervals and tails, or 'empty', as a PeriodicSet."""
        if self.at_keyword("empty"):
            self.next()
            return EMPTY
        total = EMPTY
        while True:
            tok = self.peek()
            if self.at_interval():
                piece = from_intervals(self.interval())
            elif self.at_keyword("tail"):
                piece = self.tail()
            else:
                self.error(f"found {tok.text or 'end of input'!r}",
                           expected=("an interval", "'tail'", "'empty'"))
            try:
                total = union(total, piece)
            except ValueError as e:
                self.error(str(e), tok)
            if self.at_keyword("u"):
                self.next()
                continue
            return total

    def tail(self):
        self.keyword("tail")
        side = self.keyword("left", "right")
        self.keyword("period")
        start = self.peek()
        period = self.rational()
        self.keyword("pattern")
        pattern = [self.interval()]
        while self.at_interval():
            pattern.append(self.interval())
        self.keyword("from")
        anchor = self.rational()
        try:
            if side == "right":
                return tail_right(pattern, period, anchor)
            return tail_left(pattern, period, anchor)
        except ValueError as e:
            self.error(str(e), start)

    def mask_elements(self):
        """Brace-enclosed finite set of natural numbers, e.g. {0, 2}."""
        self.expect("LBRACE", "'{'")
        elems = []
        if self.peek().kind != "RBRACE":
            elems.append(self.integer("an element"))
            while self.peek().kind == "COMMA":
                self.next()
                elems.append(self.integer("an element"))
        self.expect("RBRACE", "'}'")
        if any(e < 0 for e in elems):
            self.error("elements are natural numbers")
        return tuple(sorted(set(elems)))

    def mask_family(self):
        """Brace-enclosed list of element sets, e.g. { {0}, {0,1} }."""
        self.expect("LBRACE", "'{'")
        masks = []
        if self.peek().kind != "RBRACE":
            masks.append(self.mask_elements())
            while self.peek().kind == "COMMA":
                self.next()
                masks.append(self.mask_elements())
        self.expect("RBRACE", "'}'")
        return tuple(sorted(set(masks), key=lambda t: (len(t), t)))

    def set_ref(self, declared=("set",)):
        """A set in referencing position: a name, a literal, or masks."""
        tok = self.peek()
        if tok.kind == "LBRACE":
            return MaskLit(self.mask_elements())
        if tok.kind == "IDENT" and tok.text not in ("tail", "empty"):
            self.next()
            self.check_ref(tok, declared)
            return NameRef(tok.text)
        return SetLit(self.set_expr())

    # -- name bookkeeping -------------------------------------------------

    def declare(self, tok, kind):
        name = tok.text
        if name in _RESERVED:
            self.error(f"{name!r} is a reserved word", tok)
        if name in self.names:
            self.error(f"{name!r} is already declared", tok)
        self.names[name] = kind

    def check_ref(self, tok, kinds):
        got = self.names.get(tok.text)
        if got is None:
            self.error(f"{tok.text!r} is not declared", tok)
        if got not in kinds:
            self.error(f"{tok.text!r} is a {got}, not a "
                       + " or ".join(kinds), tok)

    def space_ref(self):
        """A space name, or a built-in class name standing for its line."""
        tok = self.expect("IDENT", "a space name")
        if tok.text in self.names:
            self.check_ref(tok, ("space",))
        elif tok.text not in BUILTIN_CLASSES:
            self.error(f"{tok.text!r} is not a declared space or a "
                       "built-in class name", tok)
        return tok.text

    def named(self, kind):
        tok = self.expect("IDENT", f"a {kind} name")
        self.check_ref(tok, (kind,))
        return tok.text

    # -- statements ---------------------------------------------------------

    def document(self):
        statements = []
        while self.peek().kind != "EOF":
            statements.append(self.statement())
        return Document(tuple(statements))

    def statement(self):
        tok = self.peek()
        if tok.kind != "IDENT":
            self.error(f"found {tok.text!r}", expected=("a statement",))
        word = tok.text
        if word in ("set", "space", "family", "map", "atlas", "gts"):
            return self.declaration()
        if word == "classify":
            return self.classify()
        if word == "derive":
            return self.derive()
        if word == "glue":
            self.next()
            return GlueQuery(self.named("atlas"))
        if word == "gts-check":
            self.next()
            return GtsCheckQuery(self.named("gts"))
        if word == "generate-gt":
            self.next()
            self.keyword("in")
            return GenerateGtQuery(self.space_ref())
        if word == "verify":
            return self.verify()
        if word == "random-suite":
            return self.random_suite()
        self.error(f"found {word!r}", expected=("a statement keyword",))

    def declaration(self):
        kind = self.next().text
        name_tok = self.expect("IDENT", "a name")
        self.expect("EQUALS", "'='")
        body = getattr(self, "decl_" + kind)()
        self.declare(name_tok, kind)
        return Declaration(kind, name_tok.text, body)

    def decl_set(self):
        if self.peek().kind == "LBRACE":
            return MaskLit(self.mask_elements())
        return SetLit(self.set_expr())

    def decl_space(self):
        word = self.keyword("line", "subspace", "finite")
        if word == "line":
            tok = self.expect("IDENT", "a built-in class name")
            if tok.text not in BUILTIN_CLASSES:
                known = ", ".join(BUILTIN_CLASSES)
                self.error(f"unknown class {tok.text!r}; one of: {known}",
                           tok)
            return LineSpaceSyn(tok.text)
        if word == "subspace":
            self.keyword("of")
            parent = self.space_ref()
            self.keyword("carrier")
            return SubspaceSyn(parent, self.set_ref())
        self.keyword("size")
        size = self.integer("the universe size")
        self.keyword("smops")
        return FiniteSpaceSyn(size, self.mask_family())

    def decl_family(self):
        if self.at_keyword("chain"):
            self.next()
            self.keyword("start")
            self.expect("LPAREN", "'('")
            lo0 = self.endpoint()
            self.expect("COMMA", "','")
            hi0 = self.endpoint()
            self.expect("RPAREN", "')'")
            self.keyword("grow")
            start = self.peek()
            dl = self.rational()
            dr = self.rational()
            try:
                ChainCover(lo0, dl, hi0, dr)
            except ValueError as e:
                self.error(str(e), start)
            return ChainSyn(lo0, dl, hi0, dr)
        parts = [self.family_part()]
        while self.at_keyword("and"):
            self.next()
            parts.append(self.family_part())
        if any(isinstance(p, MasksFamilySyn) for p in parts) \
                and len(parts) > 1:
            self.error("a masks family stands alone")
        return FamilySyn(tuple(parts))

    def family_part(self):
        word = self.keyword("list", "translates", "masks")
        if word == "list":
            sets = [self.set_ref()]
            while self.peek().kind == "COMMA":
                self.next()
                sets.append(self.set_ref())
            return ListPart(tuple(sets))
        if word == "masks":
            return MasksFamilySyn(self.mask_family())
        down = False
        if self.at_keyword("down"):
            self.next()
            down = True
        self.keyword("base")
        base = self.set_ref()
        self.keyword("step")
        step = self.rational()
        if down:
            self.keyword("stop")
            return TranslatesDownPart(base, step, self.integer())
        word = self.keyword("over", "from")
        if word == "over":
            self.keyword("Z")
            return TranslatesPart(base, step, None)
        return TranslatesPart(base, step, self.integer())

    def decl_map(self):
        word = self.keyword("piecewise", "table")
        if word == "piecewise":
            self.expect("LBRACE", "'{'")
            pieces = [self.affine_piece()]
            while self.peek().kind == "SEMI":
                self.next()
                pieces.append(self.affine_piece())
            self.expect("RBRACE", "'}'")
            self.keyword("from")
            source = self.space_ref()
            self.keyword("to")
            target = self.space_ref()
            return PiecewiseSyn(tuple(pieces), source, target)
        self.expect("LBRACE", "'{'")
        entries = {}
        while True:
            src = self.integer("a source element")
            self.expect("ARROW", "'->'")
            entries[src] = self.integer("a target element")
            if self.peek().kind != "COMMA":
                break
            self.next()
        self.expect("RBRACE", "'}'")
        if sorted(entries) != list(range(len(entries))):
            self.error("the table must cover source elements 0..n-1")
        table = tuple(entries[i] for i in range(len(entries)))
        self.keyword("from")
        source = self.space_ref()
        self.keyword("to")
        target = self.space_ref()
        return TableSyn(table, source, target)

    def affine_piece(self):
        self.keyword("on")
        domain = self.interval()
        self.expect("COLON", "':'")
        self.keyword("x")
        self.expect("ARROW", "'->'")
        slope, offset = self.affine_expr()
        return (domain, slope, offset)

    def affine_expr(self):
        """slope and offset of  a x + b: 'x', '-x', '2/3x - 1', '5'."""
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text == "x":
            self.next()
            slope = Fraction(sign)
        elif tok.kind == "NUMBER":
            self.next()
            value = sign * Fraction(tok.text)
            nxt = self.peek()
            if nxt.kind == "IDENT" and nxt.text == "x":
                self.next()
                slope = value
            else:
                return Fraction(0), value
        else:
            self.error(f"found {tok.text or 'end of input'!r}",
                       expected=("'x'", "a rational number"))
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.next().kind == "PLUS" else -1
            tok = self.expect("NUMBER", "a rational number")
            return slope, sign * Fraction(tok.text)
        return slope, Fraction(0)

    def decl_atlas(self):
        word = self.keyword("periodic", "finite")
        if word == "periodic":
            self.keyword("ambient")
            self.keyword("line")
            tok = self.expect("IDENT", "a built-in class name")
            if tok.text not in BUILTIN_CLASSES:
                self.error(f"unknown class {tok.text!r}", tok)
            self.keyword("base")
            base = self.set_ref()
            self.keyword("step")
            return PeriodicAtlasSyn(tok.text, base, self.rational())
        self.keyword("size")
        size = self.integer("the universe size")
        self.keyword("charts")
        charts = []
        while self.at_keyword("chart"):
            self.next()
            charts.append(self.mask_family())
        if not charts:
            self.error("an atlas needs at least one chart",
                       expected=("'chart'",))
        return FiniteAtlasSyn(size, tuple(charts))

    def decl_gts(self):
        word = self.keyword("from", "generated")
        if word == "from":
            return GtsFromSyn(self.named("space"))
        self.keyword("size")
        size = self.integer("the universe size")
        self.keyword("covers")
        covers = [self.mask_family()]
        while self.at_keyword("and"):
            self.next()
            covers.append(self.mask_family())
        return GtsGeneratedSyn(size, tuple(covers))

    # -- queries ------------------------------------------------------------

    def classify(self):
        self.next()
        word = self.keyword("set", "family", "map", "space")
        if word == "set":
            target = self.set_ref()
            self.keyword("in")
            return ClassifySet(target, self.space_ref())
        if word == "family":
            name = self.named("family")
            self.keyword("in")
            space = self.space_ref()
            members = "smop"
            if self.at_keyword("as"):
                self.next()
                self.keyword("open")
                members = "open"
            return ClassifyFamily(name, space, members)
        if word == "map":
            return ClassifyMap(self.named("map"))
        return ClassifySpace(self.named("space"))

    def derive(self):
        self.next()
        tok = self.expect("IDENT", "what to derive")
        if tok.text == "wcl":
            self.keyword("of")
            target = self.set_ref()
            self.keyword("in")
            return DeriveWcl(target, self.space_ref())
        if tok.text not in _DERIVE_KINDS:
            self.error(f"found {tok.text!r}", tok,
                       expected=tuple(f"'{k}'" for k in
                                      _DERIVE_KINDS + ("wcl",)))
        self.keyword("in")
        return Derive(tok.text, self.space_ref())

    def verify(self):
        self.next()
        tok = self.expect("IDENT", "a statement id")
        try:
            ident = normalize_theorem_id(tok.text)
        except ValueError as e:
            self.error(str(e), tok)
        args = []
        seen = set()
        while self.at_keyword(*_VERIFY_KEYS):
            key_tok = self.next()
            key = key_tok.text
            if key in seen:
                self.error(f"duplicate argument {key!r}", key_tok)
            seen.add(key)
            if key in ("iters", "rng-seed", "samples"):
                value = self.integer()
            elif key == "space":
                value = self.space_ref()
            elif key in ("cover", "chain"):
                value = NameRef(self.named("family"))
            else:  # seed
                value = self.set_ref()
            args.append((key, value))
        return VerifyQuery(ident, tuple(args))

    def random_suite(self):
        self.next()
        self.keyword("backend")
        backend = self.keyword("finite", "interval")
        self.keyword("iters")
        iters = self.integer()
        self.keyword("seed")
        return RandomSuiteQuery(backend, iters, self.integer())


def parse(text: str) -> Document:
    return _Parser(_lex(text)).document()


# ---------------------------------------------------------------------------
# canonical printing

def _q_text(q) -> str:
    if q == NEG_INF:
        return "-inf"
    if q == POS_INF:
        return "inf"
    return str(q)


def _interval_text(p: QInterval) -> str:
    lo = "[" if p.lo_closed else "("
    hi = "]" if p.hi_closed else ")"
    return f"{lo}{_q_text(p.lo)},{_q_text(p.hi)}{hi}"


def set_text(s: PeriodicSet) -> str:
    """Canonical expression for a set: left tail, window content, right
    tail, joined by the union operator."""
    if s.is_empty:
        return "empty"
    parts = []
    if s.left:
        pattern = translate_list(s.left, -s.window_lo)
        parts.append(f"tail left period {_q_text(s.period)} pattern "
                     + " ".join(_interval_text(p) for p in pattern)
                     + f" from {_q_text(s.window_lo)}")
    parts.extend(_interval_text(p) for p in s.core)
    if s.right:
        pattern = translate_list(s.right, -s.window_hi)
        parts.append(f"tail right period {_q_text(s.period)} pattern "
                     + " ".join(_interval_text(p) for p in pattern)
                     + f" from {_q_text(s.window_hi)}")
    return " u ".join(parts)


def _elements_text(elements) -> str:
    return "{" + ", ".join(str(e) for e in elements) + "}"


def _mask_family_text(masks) -> str:
    return "{ " + ", ".join(_elements_text(m) for m in masks) + " }" \
        if masks else "{ }"


def _set_ref_text(ref) -> str:
    if isinstance(ref, NameRef):
        return ref.name
    if isinstance(ref, MaskLit):
        return _elements_text(ref.elements)
    return set_text(ref.value)


def _affine_text(slope, offset) -> str:
    if slope == 0:
        return _q_text(offset)
    if slope == 1:
        head = "x"
    elif slope == -1:
        head = "-x"
    else:
        head = f"{_q_text(slope)}x"
    if offset == 0:
        return head
    sign = "+" if offset > 0 else "-"
    return f"{head} {sign} {_q_text(abs(offset))}"


def _family_part_text(part) -> str:
    if isinstance(part, ListPart):
        return "list " + ", ".join(_set_ref_text(s) for s in part.sets)
    if isinstance(part, MasksFamilySyn):
        return "masks " + _mask_family_text(part.masks)
    if isinstance(part, TranslatesDownPart):
        return (f"translates down base {_set_ref_text(part.base)} "
                f"step {_q_text(part.step)} stop {part.stop}")
    run = "over Z" if part.start is None else f"from {part.start}"
    return (f"translates base {_set_ref_text(part.base)} "
            f"step {_q_text(part.step)} {run}")


def _body_text(kind, body) -> str:
    if kind == "set":
        return _set_ref_text(body)
    if kind == "space":
        if isinstance(body, LineSpaceSyn):
            return f"line {body.class_name}"
        if isinstance(body, SubspaceSyn):
            return (f"subspace of {body.parent} carrier "
                    + _set_ref_text(body.carrier))
        return (f"finite size {body.size} smops "
                + _mask_family_text(body.smops))
    if kind == "family":
        if isinstance(body, ChainSyn):
            return (f"chain start ({_q_text(body.lo0)},{_q_text(body.hi0)}) "
                    f"grow {_q_text(body.dl)} {_q_text(body.dr)}")
        return " and ".join(_family_part_text(p) for p in body.parts)
    if kind == "map":
        if isinstance(body, PiecewiseSyn):
            pieces = "; ".join(
                f"on {_interval_text(dom)}: x -> {_affine_text(a, b)}"
                for dom, a, b in body.pieces)
            return (f"piecewise {{ {pieces} }} from {body.source} "
                    f"to {body.target}")
        entries = ", ".join(f"{i} -> {v}" for i, v in enumerate(body.table))
        return f"table {{ {entries} }} from {body.source} to {body.target}"
    if kind == "atlas":
        if isinstance(body, PeriodicAtlasSyn):
            return (f"periodic ambient line {body.class_name} base "
                    f"{_set_ref_text(body.base)} step {_q_text(body.step)}")
        charts = " ".join("chart " + _mask_family_text(c)
                          for c in body.charts)
        return f"finite size {body.size} charts {charts}"
    if isinstance(body, GtsFromSyn):
        return f"from {body.space}"
    covers = " and ".join(_mask_family_text(c) for c in body.covers)
    return f"generated size {body.size} covers {covers}"


def statement_text(stmt) -> str:
    if isinstance(stmt, Declaration):
        return f"{stmt.kind} {stmt.name} = {_body_text(stmt.kind, stmt.body)}"
    if isinstance(stmt, ClassifySet):
        return f"classify set {_set_ref_text(stmt.target)} in {stmt.space}"
    if isinstance(stmt, ClassifyFamily):
        suffix = " as open" if stmt.members == "open" else ""
        return f"classify family {stmt.family} in {stmt.space}{suffix}"
    if isinstance(stmt, ClassifyMap):
        return f"classify map {stmt.name}"
    if isinstance(stmt, ClassifySpace):
        return f"classify space {stmt.name}"
    if isinstance(stmt, Derive):
        return f"derive {stmt.what} in {stmt.space}"
    if isinstance(stmt, DeriveWcl):
        return f"derive wcl of {_set_ref_text(stmt.target)} in {stmt.space}"
    if isinstance(stmt, GlueQuery):
        return f"glue {stmt.name}"
    if isinstance(stmt, GtsCheckQuery):
        return f"gts-check {stmt.name}"
    if isinstance(stmt, GenerateGtQuery):
        return f"generate-gt in {stmt.space}"
    if isinstance(stmt, VerifyQuery):
        args = "".join(
            f" {k} {v if isinstance(v, (int, str)) else _set_ref_text(v)}"
            for k, v in stmt.args)
        return f"verify {stmt.ident}{args}"
    if isinstance(stmt, RandomSuiteQuery):
        return (f"random-suite backend {stmt.backend} iters {stmt.iters} "
                f"seed {stmt.seed}")
    raise TypeError(f"not a statement: {stmt!r}")


def print_document(doc: Document) -> str:
    return "".join(statement_text(s) + "\n" for s in doc.statements)


# ---------------------------------------------------------------------------
# resolution: syntax nodes to semantic objects

def _mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _as_set(ref, env):
    if isinstance(ref, NameRef):
        value = env[ref.name]
        if not isinstance(value, PeriodicSet):
            raise TypeError(f"{ref.name} is not an interval-backend set")
        return value
    if isinstance(ref, MaskLit):
        return _mask(ref.elements)
    return ref.value


def _resolve_space(name, env):
    if name in env:
        return env[name]
    return line_space(name)


def _resolve_family(body, env):
    if isinstance(body, ChainSyn):
        return ChainCover(body.lo0, body.dl, body.hi0, body.dr)
    parts = []
    for p in body.parts:
        if isinstance(p, MasksFamilySyn):
            return finite.family(_mask(m) for m in p.masks)
        if isinstance(p, ListPart):
            parts.append(FiniteList(tuple(_as_set(s, env) for s in p.sets)))
        elif isinstance(p, TranslatesDownPart):
            parts.append(TranslatesDown(_as_set(p.base, env), p.step,
                                        p.stop))
        else:
            parts.append(Translates(_as_set(p.base, env), p.step, p.start))
    if len(parts) == 1:
        return parts[0]
    return UnionOf(tuple(parts))


def resolve(doc: Document) -> dict:
    """Build the semantic object of every declaration, in order.

    Returns name -> object; construction errors surface as ValueError
    or TypeError from the underlying constructors.
    """
    env = {}
    for decl in doc.declarations:
        kind, body = decl.kind, decl.body
        if kind == "set":
            value = (_mask(body.elements) if isinstance(body, MaskLit)
                     else body.value)
        elif kind == "space":
            if isinstance(body, LineSpaceSyn):
                value = line_space(body.class_name)
            elif isinstance(body, SubspaceSyn):
                value = subspace(_resolve_space(body.parent, env),
                                 _as_set(body.carrier, env))
            else:
                u = finite.FiniteUniverse(body.size)
                value = FiniteSpace(u, finite.family(
                    _mask(m) for m in body.smops))
        elif kind == "family":
            value = _resolve_family(body, env)
        elif kind == "map":
            src = _resolve_space(body.source, env)
            dst = _resolve_space(body.target, env)
            if isinstance(body, TableSyn):
                value = SpaceMap(src, dst, FiniteMap(body.table))
            else:
                rule = PiecewiseAffine(tuple(
                    AffinePiece(dom, a, b) for dom, a, b in body.pieces))
                value = SpaceMap(src, dst, rule)
        elif kind == "atlas":
            if isinstance(body, PeriodicAtlasSyn):
                value = PeriodicAtlas(line_space(body.class_name),
                                      _as_set(body.base, env), body.step)
            else:
                u = finite.FiniteUniverse(body.size)
                value = FiniteAtlas(u, tuple(
                    finite.family(_mask(m) for m in chart)
                    for chart in body.charts))
        else:
            if isinstance(body, GtsFromSyn):
                value = from_space(env[body.space])
            else:
                u = finite.FiniteUniverse(body.size)
                psi = tuple(finite.family(_mask(m) for m in cover)
                            for cover in body.covers)
                value = generate_gt(u, psi)
        env[decl.name] = value
    return env
