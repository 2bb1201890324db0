"""Sparse exact multivariate polynomials and the differentiation pairing.

A polynomial is a map from exponent tuples to rationals over a fixed,
ordered variable context.  Dual forms live in the same context but their
monomials mean iterated partial derivatives; ``apply_operator`` lets a
dual form act on a polynomial.  The action is the plain derivative with
no factorial normalization, so a k-th power differentiated k times picks
up k!.

Text grammar (whitespace insignificant)::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    coeff  := integer | integer '/' positive-integer
    factor := var ('^' positive-integer)?
    var    := name | name '[' index (',' index)* ']'

Dual forms use the same grammar with names prefixed ``d``: ``d[1,2]``
differentiates ``x[1,2]`` and ``d_y[1,2]`` differentiates ``y[1,2]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

Rational = Fraction
Monomial = tuple[int, ...]


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    """Syntax or name error in polynomial text, with position info."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class ContextMismatchError(PolyError):
    pass


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VAR_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\[(\d+(?:,\d+)*)\])?\Z")


def canonical_var(base: str, indices: tuple[int, ...] | None = None) -> str:
    if not _NAME_RE.match(base):
        raise PolyError(f"invalid variable name {base!r}")
    if indices is None:
        return base
    return f"{base}[{','.join(str(i) for i in indices)}]"


def split_var(name: str) -> tuple[str, tuple[int, ...] | None]:
    m = _VAR_RE.match(name)
    if not m:
        raise PolyError(f"invalid variable name {name!r}")
    base, idx = m.group(1), m.group(2)
    if idx is None:
        return base, None
    return base, tuple(int(s) for s in idx.split(","))


def dual_name(primal: str) -> str:
    """Dual-variable display name: x[...] -> d[...], other -> d_<name>."""
    base, idx = split_var(primal)
    return canonical_var("d" if base == "x" else "d_" + base, idx)


def primal_name(dual: str) -> str:
    base, idx = split_var(dual)
    if base == "d":
        return canonical_var("x", idx)
    if base.startswith("d_") and len(base) > 2:
        return canonical_var(base[2:], idx)
    raise PolyError(f"dual variable must be named 'd' or 'd_<name>', got {dual!r}")


@dataclass(frozen=True)
class VarContext:
    """Ordered tuple of distinct variable names shared by polynomials."""

    names: tuple[str, ...]
    _pos: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise PolyError("variable names must be distinct")
        self._pos.update({name: i for i, name in enumerate(self.names)})

    @classmethod
    def of(cls, *names: str) -> "VarContext":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._pos


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient."""

    context: VarContext
    terms: dict[Monomial, Rational]

    def __post_init__(self) -> None:
        n = len(self.context)
        clean: dict[Monomial, Rational] = {}
        for mono, c in self.terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise PolyError(
                    f"monomial of length {len(mono)} in a {n}-variable context"
                )
            if any(e < 0 for e in mono):
                raise PolyError("negative exponent in monomial")
            c = Fraction(c)
            if c:
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, context: VarContext) -> "Polynomial":
        return cls(context, {})

    @classmethod
    def constant(cls, context: VarContext, c: int | Rational) -> "Polynomial":
        return cls(context, {(0,) * len(context): Fraction(c)})

    @classmethod
    def variable(cls, context: VarContext, pos: int) -> "Polynomial":
        mono = [0] * len(context)
        mono[pos] = 1
        return cls(context, {tuple(mono): Fraction(1)})

    @classmethod
    def named_variable(cls, context: VarContext, name: str) -> "Polynomial":
        return cls.variable(context, context.position(name))

    # ------------------------------------------------------------------
    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_degree(self) -> int:
        degs = {sum(m) for m in self.terms}
        if len(degs) != 1:
            raise PolyError("polynomial is zero or not homogeneous")
        return degs.pop()

    def coefficient(self, mono: Monomial) -> Rational:
        return self.terms.get(tuple(mono), Fraction(0))

    def _check_compatible(self, other: "Polynomial") -> None:
        if type(self) is not type(other):
            raise ContextMismatchError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if self.context != other.context:
            raise ContextMismatchError("polynomials live in different contexts")

    # ------------------------------------------------------------------
    # ring arithmetic (exact)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, Fraction(0)) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return type(self)(self.context, out)

    def __neg__(self) -> "Polynomial":
        return type(self)(self.context, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int | Rational) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return type(self)(self.context, {})
        return type(self)(self.context, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        out: dict[Monomial, Rational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                nc = out.get(m, Fraction(0)) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return type(self)(self.context, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = type(self).constant(self.context, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def partial(self, pos: int) -> "Polynomial":
        """Derivative with respect to the variable at ``pos``."""
        out: dict[Monomial, Rational] = {}
        for m, c in self.terms.items():
            e = m[pos]
            if e:
                target = m[:pos] + (e - 1,) + m[pos + 1 :]
                nc = out.get(target, Fraction(0)) + c * e
                if nc:
                    out[target] = nc
                else:
                    out.pop(target, None)
        return type(self)(self.context, out)

    def __str__(self) -> str:
        return format_polynomial(self)


class DualForm(Polynomial):
    """Element of the dual ring: monomials act as iterated derivatives."""


# ----------------------------------------------------------------------
# the apolar action


def apply_operator(op: DualForm, f: Polynomial) -> Polynomial:
    """Let ``op`` act on ``f`` by iterated partial differentiation.

    Linear in both arguments; drops degree by deg(op) on homogeneous
    input and returns zero when the operator degree exceeds deg(f).
    """
    if not isinstance(op, DualForm):
        raise ContextMismatchError("operator must be a DualForm")
    if isinstance(f, DualForm) or not isinstance(f, Polynomial):
        raise ContextMismatchError("operand must be a (primal) Polynomial")
    if op.context != f.context:
        raise ContextMismatchError("operator and operand contexts differ")
    out: dict[Monomial, Rational] = {}
    for me, ce in op.terms.items():
        for mf, cf in f.terms.items():
            factor = 1
            for a, b in zip(mf, me):
                if b:
                    if a < b:
                        factor = 0
                        break
                    factor *= math.perm(a, b)
            if not factor:
                continue
            target = tuple(a - b for a, b in zip(mf, me))
            nc = out.get(target, Fraction(0)) + ce * cf * factor
            if nc:
                out[target] = nc
            else:
                out.pop(target, None)
    return Polynomial(f.context, out)


# ----------------------------------------------------------------------
# substitution, dehomogenization


def substitute(f: Polynomial, pos: int, replacement: Polynomial) -> Polynomial:
    """Substitute ``replacement`` for the variable at ``pos``."""
    if replacement.context != f.context:
        raise ContextMismatchError("replacement lives in a different context")
    powers: dict[int, Polynomial] = {0: Polynomial.constant(f.context, 1)}

    def power(k: int) -> Polynomial:
        if k not in powers:
            powers[k] = power(k - 1) * replacement
        return powers[k]

    out = Polynomial.zero(f.context)
    for m, c in f.terms.items():
        k = m[pos]
        rest = m[:pos] + (0,) + m[pos + 1 :]
        out = out + Polynomial(f.context, {rest: c}) * power(k)
    return out


def dehomogenize(f: Polynomial, l: Polynomial) -> Polynomial:
    """Set a chosen linear form to 1 via an invertible change of coordinates.

    The first variable with nonzero coefficient in ``l`` is eliminated;
    the remaining coordinates are kept, so ``l`` is completed to a basis
    by unit vectors.  The result generally mixes degrees.
    """
    if not isinstance(l, Polynomial) or l.is_zero or l.degree() != 1 or not l.is_homogeneous():
        raise PolyError("dehomogenization direction must be a nonzero linear form")
    if l.context != f.context:
        raise ContextMismatchError("form and direction contexts differ")
    if not f.is_homogeneous():
        raise PolyError("can only dehomogenize a homogeneous polynomial")
    coeffs = {m.index(1): c for m, c in l.terms.items()}
    j = min(coeffs)
    aj = coeffs[j]
    repl = Polynomial.constant(f.context, 1)
    for i, a in coeffs.items():
        if i != j:
            repl = repl - Polynomial.variable(f.context, i).scale(a)
    repl = repl.scale(Fraction(1) / aj)
    return substitute(f, j, repl)


def homogenize(f: Polynomial, l: Polynomial, degree: int) -> Polynomial:
    """Inverse of :func:`dehomogenize`: pad each term with powers of ``l``."""
    if not isinstance(l, Polynomial) or l.is_zero or l.degree() != 1 or not l.is_homogeneous():
        raise PolyError("homogenization direction must be a nonzero linear form")
    if f.degree() > degree:
        raise PolyError("target degree is below the degree of the polynomial")
    out = Polynomial.zero(f.context)
    for m, c in f.terms.items():
        out = out + Polynomial(f.context, {m: c}) * l ** (degree - sum(m))
    return out


# ----------------------------------------------------------------------
# power-sum evaluation


def evaluate_decomposition(
    linear_forms: list[Polynomial], coeffs: list[int | Rational], d: int
) -> Polynomial:
    """Exact value of sum_i c_i * l_i**d."""
    if len(linear_forms) != len(coeffs):
        raise PolyError(
            f"{len(linear_forms)} forms against {len(coeffs)} coefficients"
        )
    if not linear_forms:
        raise PolyError("empty decomposition")
    ctx = linear_forms[0].context
    out = Polynomial.zero(ctx)
    for l, c in zip(linear_forms, coeffs):
        if l.is_zero or l.degree() != 1 or not l.is_homogeneous():
            raise PolyError(f"summand {format_polynomial(l)!r} is not a linear form")
        out = out + (l**d).scale(c)
    return out


# ----------------------------------------------------------------------
# monomial enumeration (graded lexicographic, descending exponents)


def _monomials(n: int, degree: int) -> tuple[Monomial, ...]:
    if degree < 0:
        return ()
    if n == 0:
        return ((),) if degree == 0 else ()
    out = []

    def rec(prefix: tuple[int, ...], nleft: int, dleft: int) -> None:
        if nleft == 1:
            out.append(prefix + (dleft,))
            return
        for first in range(dleft, -1, -1):
            rec(prefix + (first,), nleft - 1, dleft - first)

    rec((), n, degree)
    return tuple(out)


_MONO_CACHE: dict[tuple[int, int], tuple[Monomial, ...]] = {}


def monomial_basis(context: VarContext, degree: int) -> list[Monomial]:
    """All monomials of the given degree, lexicographically descending."""
    key = (len(context), degree)
    if key not in _MONO_CACHE:
        _MONO_CACHE[key] = _monomials(*key)
    return list(_MONO_CACHE[key])


# ----------------------------------------------------------------------
# formatting


def _format_coeff(q: Rational) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.context.names
    if isinstance(f, DualForm):
        names = tuple(dual_name(n) for n in names)
    items = sorted(
        f.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))
    )
    pieces = []
    for mono, c in items:
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, mono)
            if e
        ]
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


# ----------------------------------------------------------------------
# parsing


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, NAME, SYM, END
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    toks = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("NUM", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("NAME", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch in "+-*/^[],":
            toks.append(_Token("SYM", ch, line, start_col))
            col += 1
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
    toks.append(_Token("END", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, dual: bool, context: VarContext | None):
        self.toks = _tokenize(text)
        self.pos = 0
        self.dual = dual
        self.context = context
        self.seen: dict[str, None] = {}

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_sym(self, sym: str) -> _Token:
        tok = self.peek()
        if tok.kind != "SYM" or tok.text != sym:
            self.error(f"expected {sym!r}, got {tok.text or 'end of input'!r}")
        return self.take()

    # raw term list: (coefficient, [(var name, exponent), ...])
    def parse_terms(self) -> list[tuple[Rational, list[tuple[str, int]]]]:
        terms = []
        sign = Fraction(1)
        tok = self.peek()
        if tok.kind == "SYM" and tok.text in "+-":
            self.take()
            sign = Fraction(-1) if tok.text == "-" else Fraction(1)
        while True:
            coeff, factors = self._term()
            terms.append((sign * coeff, factors))
            tok = self.peek()
            if tok.kind == "END":
                break
            if tok.kind == "SYM" and tok.text in "+-":
                self.take()
                sign = Fraction(-1) if tok.text == "-" else Fraction(1)
                continue
            self.error(f"expected '+', '-' or end of input, got {tok.text!r}")
        return terms

    def _term(self) -> tuple[Rational, list[tuple[str, int]]]:
        tok = self.peek()
        factors: list[tuple[str, int]] = []
        if tok.kind == "NUM":
            coeff = self._coeff()
        elif tok.kind == "NAME":
            coeff = Fraction(1)
            factors.append(self._factor())
        else:
            self.error(f"expected a term, got {tok.text or 'end of input'!r}")
        while True:
            tok = self.peek()
            if tok.kind == "SYM" and tok.text == "*":
                self.take()
                factors.append(self._factor())
            else:
                break
        return coeff, factors

    def _coeff(self) -> Rational:
        num = int(self.take().text)
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == "/":
            self.take()
            dtok = self.peek()
            if dtok.kind != "NUM":
                self.error("expected a positive integer denominator")
            den = int(self.take().text)
            if den == 0:
                self.error("denominator must be a positive integer", dtok)
            return Fraction(num, den)
        return Fraction(num)

    def _factor(self) -> tuple[str, int]:
        name = self._var()
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == "^":
            self.take()
            etok = self.peek()
            if etok.kind == "SYM" and etok.text == "-":
                self.error("exponent must be a positive integer", etok)
            if etok.kind != "NUM":
                self.error(f"expected an exponent, got {etok.text or 'end of input'!r}")
            self.take()
            exp = int(etok.text)
            if exp == 0:
                self.error("exponent must be a positive integer, got 0", etok)
            return name, exp
        return name, 1

    def _var(self) -> str:
        tok = self.peek()
        if tok.kind != "NAME":
            self.error(f"expected a variable, got {tok.text or 'end of input'!r}")
        self.take()
        indices: tuple[int, ...] | None = None
        nxt = self.peek()
        if nxt.kind == "SYM" and nxt.text == "[":
            self.take()
            idx = []
            while True:
                itok = self.peek()
                if itok.kind != "NUM":
                    self.error(f"expected an index, got {itok.text or 'end of input'!r}")
                self.take()
                idx.append(int(itok.text))
                sep = self.peek()
                if sep.kind == "SYM" and sep.text == ",":
                    self.take()
                    continue
                self.expect_sym("]")
                break
            indices = tuple(idx)
        name = canonical_var(tok.text, indices)
        if self.dual:
            try:
                name = primal_name(name)
            except PolyError as exc:
                self.error(str(exc), tok)
        if self.context is not None:
            if name not in self.context:
                shown = dual_name(name) if self.dual else name
                self.error(f"unknown variable {shown!r}", tok)
        else:
            self.seen.setdefault(name)
        return name


def _assemble(
    cls: type,
    raw: list[tuple[Rational, list[tuple[str, int]]]],
    context: VarContext,
):
    terms: dict[Monomial, Rational] = {}
    n = len(context)
    for coeff, factors in raw:
        mono = [0] * n
        for name, exp in factors:
            mono[context.position(name)] += exp
        key = tuple(mono)
        nc = terms.get(key, Fraction(0)) + coeff
        if nc:
            terms[key] = nc
        else:
            terms.pop(key, None)
    return cls(context, terms)


def parse_polynomial(text: str, context: VarContext | None = None) -> Polynomial:
    """Parse polynomial text; the context is inferred (variables ordered
    by first appearance) when not supplied."""
    parser = _Parser(text, dual=False, context=context)
    raw = parser.parse_terms()
    ctx = context if context is not None else VarContext(tuple(parser.seen))
    return _assemble(Polynomial, raw, ctx)


def parse_polynomial_list(
    texts: list[str], context: VarContext | None = None
) -> list[Polynomial]:
    """Parse several polynomials over one shared context.

    Without an explicit context, variables are collected across all
    inputs in order of first appearance before any polynomial is built.
    """
    parsers = []
    seen: dict[str, None] = {}
    for text in texts:
        p = _Parser(text, dual=False, context=context)
        raw = p.parse_terms()
        parsers.append(raw)
        for name in p.seen:
            seen.setdefault(name)
    ctx = context if context is not None else VarContext(tuple(seen))
    return [_assemble(Polynomial, raw, ctx) for raw in parsers]


def parse_dual_form(text: str, context: VarContext) -> DualForm:
    """Parse dual-form text (d-prefixed names) against a primal context."""
    parser = _Parser(text, dual=True, context=context)
    raw = parser.parse_terms()
    return _assemble(DualForm, raw, context)
