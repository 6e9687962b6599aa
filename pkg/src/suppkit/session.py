"""Session documents: a small line-oriented language for declaring a ring,
ideals, modules, complexes, chain maps and DVR objects, followed by
commands.  Parsing produces a canonical text form; running produces ordered
key/value reports."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import dvrcalc
from .complexes import ChainComplex, ChainMap, koszul_complex
from .errors import SemanticError, SessionSyntaxError, SuppkitError
from .exactla import ExactMatrix
from .grobner import Ideal, PrimeIdeal
from .modules import FpModule
from .polys import PolyRing
from .rings import QQ, ZZ, PrimeField

_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*")
_INT = re.compile(r"-?\d+")
_SCALAR = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def linecol(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None):
        line, col = self.linecol(pos)
        raise SessionSyntaxError(msg, line, col)

    def skip(self):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "#":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            self.error(f"expected {s!r}")

    def word(self, what="a name") -> str:
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def peek_word(self):
        self.skip()
        m = _WORD.match(self.text, self.pos)
        return m.group(0) if m else None

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group(0))

    def raw_until(self, stops: str):
        """Raw text up to a stop character at bracket depth zero."""
        self.skip()
        start = self.pos
        depth = 0
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c in "([{":
                depth += 1
            elif c in ")]}":
                if depth == 0 and c in stops:
                    break
                depth -= 1
            elif depth == 0 and c in stops:
                break
            self.pos += 1
        return t[start:self.pos].rstrip(), start


# ---------------------------------------------------------------------------
# document model
# ---------------------------------------------------------------------------


@dataclass
class Statement:
    keyword: str
    canonical: str
    line: int
    data: dict = field(default_factory=dict)


@dataclass
class SessionDocument:
    ring: object = None
    statements: list = field(default_factory=list)
    env: dict = field(default_factory=dict)
    dvr_complete: bool = True

    @property
    def commands(self) -> list:
        return [s for s in self.statements if s.data.get("command")]

    def format(self) -> str:
        return "".join(s.canonical + "\n" for s in self.statements)


COMMANDS = (
    "supp",
    "cosupp",
    "supp-member",
    "cosupp-member",
    "homology",
    "tor",
    "ext",
    "adic",
    "dvr-eval",
    "lc-fiber",
    "bass",
    "gamma",
    "filtration",
    "detect",
    "verify",
    "gb",
)


def format_ring(R) -> str:
    if not isinstance(R, PolyRing):
        return R.tag
    rel = ""
    if R.has_relations:
        rel = " relations (" + ", ".join(R.free.format(R.free.coerce(r)) for r in R._rel_input) + ")"
    return f"{R.base.tag}[{', '.join(R.names)}] {R.order}{rel}"


def format_matrix(R, M: ExactMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(R.format(v) for v in row) + "]" for row in M.rows) + "]"


class _Parser:
    def __init__(self, text: str):
        self.s = Scanner(text)
        self.doc = SessionDocument()

    # helpers -----------------------------------------------------------------
    def _ring(self, pos):
        if self.doc.ring is None:
            self.s.error("no ring declared yet", pos)
        return self.doc.ring

    def _scalar(self, text, start):
        R = self._ring(start)
        if isinstance(R, PolyRing):
            try:
                return R.parse(text)
            except SessionSyntaxError as exc:
                self.s.error(str(exc).split(": ", 1)[-1], start + exc.column - 1)
        m = _SCALAR.match(text)
        if not m:
            self.s.error(f"expected an element of {R.tag}", start)
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            self.s.error("zero denominator", start)
        if R == ZZ and den != 1:
            self.s.error("fractions are not integers", start)
        return R.coerce(Fraction(num, den) if den != 1 else num)

    def _poly_list(self, close: str):
        """Comma separated elements, consuming the closing bracket."""
        out = []
        if self.s.eat(close):
            return out
        while True:
            text, start = self.s.raw_until("," + close)
            if not text:
                self.s.error("expected an element", start)
            out.append(self._scalar(text, start))
            if self.s.eat(close):
                return out
            self.s.expect(",")

    def _ideal_literal(self):
        self.s.expect("(")
        return self._poly_list(")")

    def _matrix(self):
        R = self._ring(self.s.pos)
        start = self.s.pos
        self.s.expect("[")
        rows = []
        if self.s.eat("]"):
            return None
        while True:
            self.s.expect("[")
            rows.append(self._poly_list("]"))
            if self.s.eat("]"):
                break
            self.s.expect(",")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise SemanticError(f"line {self.s.linecol(start)[0]}: rows of different lengths")
        return ExactMatrix(R, rows, len(rows), widths.pop())

    def _define(self, name, kind, value, pos):
        if name in self.doc.env:
            line, col = self.s.linecol(pos)
            raise SemanticError(f"line {line}: {name!r} is already defined")
        self.doc.env[name] = (kind, value)

    def _lookup(self, name, kinds, pos):
        if name not in self.doc.env:
            if name == "R" and self.doc.ring is not None and set(kinds) & {"module", "complex"}:
                return "module", FpModule.free(self.doc.ring, 1)
            line, _ = self.s.linecol(pos)
            raise SemanticError(f"line {line}: unknown name {name!r}")
        kind, value = self.doc.env[name]
        if kind not in kinds:
            line, _ = self.s.linecol(pos)
            raise SemanticError(f"line {line}: {name!r} is a {kind}, expected {' or '.join(kinds)}")
        return kind, value

    def _ideal_ref(self):
        """An ideal name or literal; returns (canonical text, Ideal)."""
        pos = self.s.pos
        if self.s.peek() == "(":
            gens = self._ideal_literal()
            R = self._ring(pos)
            return "(" + ", ".join(R.format(g) for g in gens) + ")", Ideal(R, gens)
        name = self.s.word("an ideal")
        kind, v = self._lookup(name, ("ideal", "prime"), pos)
        return name, (v.ideal if kind == "prime" else v)

    def _prime_ref(self):
        pos = self.s.pos
        if self.s.peek() == "(":
            text, I = self._ideal_ref()
            try:
                return text, PrimeIdeal.certify(I)
            except SuppkitError:
                return text, ("uncertified", I)
        name = self.s.word("a prime ideal")
        kind, v = self._lookup(name, ("ideal", "prime"), pos)
        if kind == "prime":
            return name, v
        try:
            return name, PrimeIdeal.certify(v)
        except SuppkitError:
            return name, ("uncertified", v)

    def _object_ref(self, kinds=("module", "complex", "dvr")):
        pos = self.s.pos
        name = self.s.word("an object name")
        kind, v = self._lookup(name, kinds, pos)
        return name, kind, v

    def _window(self):
        self.s.expect("window")
        lo = self.s.integer()
        hi = self.s.integer()
        if lo > hi:
            self.s.error("empty window")
        return lo, hi

    def _option_int(self, word):
        if self.s.peek_word() == word:
            self.s.word()
            return self.s.integer()
        return None

    # statements ----------------------------------------------------------------
    def parse(self) -> SessionDocument:
        while not self.s.at_end():
            start = self.s.pos
            line, _ = self.s.linecol(start)
            kw = self.s.word("a statement keyword")
            handler = getattr(self, "_st_" + kw.replace("-", "_"), None)
            if handler is None:
                if kw in COMMANDS:
                    handler = self._command
                else:
                    self.s.error(f"unknown statement {kw!r}", start)
            if handler == self._command:
                canonical, data = handler(kw, start)
            else:
                canonical, data = handler()
            if not self.s.eat(";") and not self.s.at_end():
                self.s.error("expected ';'")
            self.doc.statements.append(Statement(kw, canonical + ";", line, data))
        return self.doc

    def _st_ring(self):
        pos = self.s.pos
        if self.doc.ring is not None:
            raise SemanticError(f"line {self.s.linecol(pos)[0]}: only one ring per session")
        base_name = self.s.word("QQ, ZZ or Fp(p)")
        if base_name == "QQ":
            base = QQ
        elif base_name == "ZZ":
            base = ZZ
        elif base_name == "Fp":
            self.s.expect("(")
            p = self.s.integer()
            self.s.expect(")")
            try:
                base = PrimeField(p)
            except SuppkitError as exc:
                raise SemanticError(f"line {self.s.linecol(pos)[0]}: {exc}") from None
        else:
            self.s.error(f"unknown base ring {base_name!r}", pos)
        if not self.s.eat("["):
            self.doc.ring = base
            return f"ring {format_ring(base)}", {}
        if base == ZZ:
            self.s.error("polynomial rings need a field of coefficients", pos)
        names = [self.s.word("a variable")]
        while self.s.eat(","):
            names.append(self.s.word("a variable"))
        self.s.expect("]")
        order = "grevlex"
        if self.s.peek_word() in ("grevlex", "lex"):
            order = self.s.word()
        free = PolyRing(base, names, order)
        rels = []
        if self.s.peek_word() == "relations":
            self.s.word()
            self.doc.ring = free
            rels = self._ideal_literal()
        self.doc.ring = PolyRing(base, names, order, rels) if rels else free
        return f"ring {format_ring(self.doc.ring)}", {}

    def _st_dvr_ambient(self):
        w = self.s.word("complete or incomplete")
        if w not in ("complete", "incomplete"):
            self.s.error("expected complete or incomplete")
        self.doc.dvr_complete = w == "complete"
        return f"dvr-ambient {w}", {}

    def _st_ideal(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect("=")
        gens = self._ideal_literal()
        R = self._ring(pos)
        self._define(name, "ideal", Ideal(R, gens), pos)
        return f"ideal {name} = (" + ", ".join(R.format(g) for g in gens) + ")", {}

    def _st_prime(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect("=")
        gens = self._ideal_literal()
        R = self._ring(pos)
        flag = ""
        if self.s.peek_word() in ("assert-prime", "assert-maximal"):
            flag = self.s.word()
        try:
            P = PrimeIdeal.certify(
                Ideal(R, gens), assert_prime=bool(flag), assert_maximal=flag == "assert-maximal"
            )
        except SuppkitError as exc:
            raise SemanticError(f"line {self.s.linecol(pos)[0]}: {exc}") from None
        self._define(name, "prime", P, pos)
        text = f"prime {name} = (" + ", ".join(R.format(g) for g in gens) + ")"
        return text + (f" {flag}" if flag else ""), {}

    def _st_module(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect("=")
        R = self._ring(pos)
        kind = self.s.word("coker, cyclic or free")
        if kind == "coker":
            P = self._matrix()
            if P is None:
                self.s.error("coker needs a nonempty matrix", pos)
            M = FpModule.coker(P)
            text = f"coker {format_matrix(R, P)}"
        elif kind == "cyclic":
            gens = self._ideal_literal()
            M = FpModule.cyclic(R, gens)
            text = "cyclic (" + ", ".join(R.format(g) for g in gens) + ")"
        elif kind == "free":
            n = self.s.integer()
            if n < 0:
                self.s.error("negative rank")
            M = FpModule.free(R, n)
            text = f"free {n}"
        else:
            self.s.error(f"unknown module form {kind!r}", pos)
        self._define(name, "module", M, pos)
        return f"module {name} = {text}", {}

    def _st_complex(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect("=")
        R = self._ring(pos)
        if self.s.peek() == "{":
            C, text = self._complex_body(R)
        else:
            kw = self.s.word("koszul, module or a degree map")
            if kw == "koszul":
                gens = self._ideal_literal()
                C = koszul_complex(gens, R)
                text = "koszul(" + ", ".join(R.format(g) for g in gens) + ")"
            elif kw == "module":
                mpos = self.s.pos
                mname = self.s.word()
                _, M = self._lookup(mname, ("module",), mpos)
                deg = self._option_int("at") or 0
                C = ChainComplex.from_module(M, deg)
                text = f"module {mname} at {deg}"
            else:
                self.s.error(f"unknown complex form {kw!r}", pos)
        self._define(name, "complex", C, pos)
        return f"complex {name} = {text}", {}

    def _complex_body(self, R):
        start = self.s.pos
        self.s.expect("{")
        entries = {}
        while not self.s.eat("}"):
            deg = self.s.integer()
            if deg in entries:
                self.s.error(f"degree {deg} given twice")
            self.s.expect(":")
            if self.s.peek_word() == "free":
                self.s.word()
                entries[deg] = ("free", self.s.integer())
            else:
                entries[deg] = ("map", self._matrix())
            if not self.s.eat(","):
                self.s.expect("}")
                break
        line = self.s.linecol(start)[0]
        ranks = {}

        def setrank(i, n):
            if ranks.get(i, n) != n:
                raise SemanticError(f"line {line}: rank mismatch in degree {i}")
            ranks[i] = n

        for deg, (kind, v) in entries.items():
            if kind == "free":
                setrank(deg, v)
            elif v is not None:
                setrank(deg, v.ncols)
                setrank(deg - 1, v.nrows)
        for deg, (kind, v) in entries.items():
            if deg not in ranks:
                raise SemanticError(f"line {line}: cannot infer the rank in degree {deg}; write '{deg}: free n'")
        diffs = {deg: v for deg, (kind, v) in entries.items() if kind == "map" and v is not None}
        try:
            C = ChainComplex(R, ranks, diffs)
        except SuppkitError as exc:
            raise SemanticError(f"line {line}: {exc}") from None
        parts = []
        for deg in sorted(entries, reverse=True):
            kind, v = entries[deg]
            if kind == "free":
                parts.append(f"{deg}: free {v}")
            else:
                parts.append(f"{deg}: " + ("[]" if v is None else format_matrix(R, v)))
        return C, "{" + ", ".join(parts) + "}"

    def _st_map(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect(":")
        R = self._ring(pos)
        sname, _, X = self._object_ref(("module", "complex"))
        self.s.expect("->")
        tname, _, Y = self._object_ref(("module", "complex"))
        self.s.expect("=")
        X = ChainComplex.from_module(X) if isinstance(X, FpModule) else X
        Y = ChainComplex.from_module(Y) if isinstance(Y, FpModule) else Y
        self.s.expect("{")
        comps = {}
        while not self.s.eat("}"):
            deg = self.s.integer()
            self.s.expect(":")
            comps[deg] = self._matrix()
            if not self.s.eat(","):
                self.s.expect("}")
                break
        line = self.s.linecol(pos)[0]
        try:
            f = ChainMap(X, Y, {d: M for d, M in comps.items() if M is not None})
        except SuppkitError as exc:
            raise SemanticError(f"line {line}: {exc}") from None
        self._define(name, "map", f, pos)
        body = ", ".join(
            f"{d}: " + ("[]" if comps[d] is None else format_matrix(R, comps[d])) for d in sorted(comps, reverse=True)
        )
        return f"map {name} : {sname} -> {tname} = {{{body}}}", {}

    def _dvr_env(self):
        return {k: v for k, (kind, v) in self.doc.env.items() if kind == "dvr"}

    def _dvr_expr(self):
        text, start = self.s.raw_until(";")
        line, col = self.s.linecol(start)
        tree = dvrcalc.parse_dvr_tree(text, line, col)
        self._check_dvr_names(tree, start)
        return tree

    def _check_dvr_names(self, tree, pos):
        if tree[0] == "name":
            self._lookup(tree[1], ("dvr",), pos)
            return
        for t in tree[1:]:
            if isinstance(t, tuple):
                if t and isinstance(t[0], tuple):
                    for u in t:
                        self._check_dvr_names(u, pos)
                else:
                    self._check_dvr_names(t, pos)

    def _st_dvr(self):
        pos = self.s.pos
        name = self.s.word()
        self.s.expect("=")
        tree = self._dvr_expr()
        if tree[0] in ("supp", "cosupp", "adic"):
            self.s.error("a DVR definition must be an object, not a query", pos)
        try:
            value = dvrcalc.eval_dvr_tree(tree, self._dvr_env(), self.doc.dvr_complete)
        except SuppkitError as exc:
            raise SemanticError(f"line {self.s.linecol(pos)[0]}: {exc}") from None
        self._define(name, "dvr", value, pos)
        return f"dvr {name} = {dvrcalc.format_dvr_tree(tree)}", {}

    # commands -----------------------------------------------------------------
    def _command(self, kw, start):
        data = {"command": kw}
        s = self.s
        if kw in ("supp", "cosupp", "homology", "filtration"):
            kinds = ("module",) if kw == "filtration" else ("module", "complex", "dvr")
            name, kind, v = self._object_ref(kinds)
            data.update(obj=v, kind=kind)
            return f"{kw} {name}", data
        if kw == "gb":
            text, I = self._ideal_ref()
            data.update(ideal=I)
            return f"gb {text}", data
        if kw in ("supp-member", "cosupp-member"):
            name_or_text, p = self._dvr_prime_or_prime()
            oname, kind, v = self._object_ref()
            data.update(prime=p, obj=v, kind=kind)
            text = f"{kw} {name_or_text} {oname}"
            if kw == "cosupp-member":
                b = self._option_int("bound")
                data["bound"] = b
                if b is not None:
                    text += f" bound {b}"
            return text, data
        if kw in ("tor", "ext"):
            a, _, A = self._object_ref(("module", "complex"))
            b, _, B = self._object_ref(("module", "complex"))
            lo, hi = self._window()
            data.update(first=A, second=B, window=(lo, hi))
            return f"{kw} {a} {b} window {lo} {hi}", data
        if kw == "adic":
            name, kind, v = self._object_ref()
            if kind == "dvr":
                ideal = self._dvr_ideal()
                text = ideal
            else:
                text, ideal = self._ideal_ref()
            b = self._option_int("bound")
            data.update(obj=v, kind=kind, ideal=ideal, bound=b)
            return f"adic {name} {text}" + (f" bound {b}" if b is not None else ""), data
        if kw == "dvr-eval":
            tree = self._dvr_expr()
            data.update(tree=tree)
            return f"dvr-eval {dvrcalc.format_dvr_tree(tree)}", data
        if kw == "lc-fiber":
            mtext, m = self._prime_ref()
            atext, a = self._ideal_ref()
            name, _, X = self._object_ref(("module", "complex"))
            lo, hi = self._window()
            data.update(prime=m, ideal=a, obj=X, window=(lo, hi))
            return f"lc-fiber {mtext} {atext} {name} window {lo} {hi}", data
        if kw == "bass":
            ptext, p = self._prime_ref()
            name, _, X = self._object_ref(("module", "complex"))
            lo, hi = self._window()
            data.update(prime=p, obj=X, window=(lo, hi))
            return f"bass {ptext} {name} window {lo} {hi}", data
        if kw == "gamma":
            if s.peek() != "(" and self.doc.env.get(s.peek_word() or "", ("",))[0] == "dvr":
                name, kind, v = self._object_ref(("dvr",))
                data.update(obj=v, kind=kind)
                return f"gamma {name}", data
            atext, a = self._ideal_ref()
            name, kind, v = self._object_ref(("module",))
            data.update(ideal=a, obj=v, kind=kind)
            return f"gamma {atext} {name}", data
        if kw == "detect":
            fpos = s.pos
            fname = s.word("a chain map")
            _, f = self._lookup(fname, ("map",), fpos)
            atext, a = self._ideal_ref()
            mode = "koszul"
            if s.peek_word() == "mode":
                s.word()
                mode = s.word("koszul, quotient or rhom-quotient")
                if mode not in ("koszul", "quotient", "rhom-quotient"):
                    s.error(f"unknown mode {mode!r}")
            data.update(map=f, ideal=a, mode=mode)
            return f"detect {fname} {atext} mode {mode}", data
        if kw == "verify":
            spos = s.pos
            suite = s.word("a suite name")
            from .verify import SUITES

            if suite not in SUITES:
                s.error(f"unknown suite {suite!r}; available: {', '.join(sorted(SUITES))}", spos)
            seed = self._option_int("seed")
            count = self._option_int("count")
            data.update(suite=suite, seed=seed, count=count)
            text = f"verify {suite}"
            if seed is not None:
                text += f" seed {seed}"
            if count is not None:
                text += f" count {count}"
            return text, data
        s.error(f"unknown command {kw!r}", start)

    def _dvr_ideal(self):
        if self.s.peek() == "0":
            self.s.integer()
            return "0"
        w = self.s.word("0 or m")
        if w != "m":
            self.s.error("DVR ideals are 0 and m")
        return "m"

    def _dvr_prime_or_prime(self):
        """Either a DVR prime (0 or m) or a prime of the session ring."""
        if self.s.peek() == "0":
            self.s.integer()
            return "0", "0"
        w = self.s.peek_word()
        if w == "m" and "m" not in self.doc.env:
            self.s.word()
            return "m", "m"
        return self._prime_ref()


def parse_session(text: str) -> SessionDocument:
    return _Parser(text).parse()
