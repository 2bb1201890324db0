"""Apolar algebras of forms and linear series.

The pairing between the dual ring and the polynomial ring is realized
as catalecticant matrices: for a series W of degree-d forms, the degree-t
catalecticant is the matrix of

    Theta  ->  (Theta F_1, ..., Theta F_k),   Theta in the degree-t dual piece,

over a reduced basis F_1, ..., F_k of W.  Its kernel is the degree-t
piece of the annihilator of W and its rank is the degree-t dimension of
the apolar algebra, so Hilbert functions, apolar lengths, annihilator
pieces, minimal generator degrees and colon pieces all come out of exact
rank/kernel computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import QMatrix, Rational, SpanBuilder, kernel_basis, rank, row_space_basis
from .poly import (
    ContextMismatchError,
    DualForm,
    Monomial,
    Polynomial,
    VarContext,
    apply_operator,
    monomial_basis,
)


class ZeroSeriesError(ValueError):
    """The zero series has no apolar algebra worth talking about."""


class DegreeRangeError(ValueError):
    pass


@dataclass(frozen=True)
class LinearSeries:
    """Finite-dimensional space of forms of one degree (a single form is
    the one-dimensional case)."""

    forms: tuple[Polynomial, ...]
    degree: int

    def __post_init__(self) -> None:
        if not self.forms:
            raise ZeroSeriesError("a linear series needs at least one form")
        ctx = self.forms[0].context
        saw_nonzero = False
        for f in self.forms:
            if isinstance(f, DualForm) or not isinstance(f, Polynomial):
                raise ContextMismatchError("series members must be primal polynomials")
            if f.context != ctx:
                raise ContextMismatchError("series members live in different contexts")
            if f.is_zero:
                continue
            saw_nonzero = True
            if not f.is_homogeneous() or f.homogeneous_degree() != self.degree:
                raise ValueError(
                    f"series member {f} is not homogeneous of degree {self.degree}"
                )
        if not saw_nonzero:
            raise ZeroSeriesError("all series members are zero")

    @classmethod
    def of_forms(cls, forms) -> "LinearSeries":
        forms = tuple(forms)
        degree = next((f.homogeneous_degree() for f in forms if not f.is_zero), None)
        if degree is None:
            raise ZeroSeriesError("all series members are zero")
        return cls(forms, degree)

    @classmethod
    def of_form(cls, f: Polynomial) -> "LinearSeries":
        return cls.of_forms((f,))

    @property
    def context(self) -> VarContext:
        return self.forms[0].context

    @cached_property
    def reduced_basis(self) -> tuple[Polynomial, ...]:
        """Greedy independent subset of the forms spanning the same space."""
        span = SpanBuilder()
        basis = []
        for f in self.forms:
            if not f.is_zero and span.add(f.terms):
                basis.append(f)
        return tuple(basis)

    @property
    def dim(self) -> int:
        return len(self.reduced_basis)


def differentiate_series(W: LinearSeries, theta: DualForm) -> LinearSeries | None:
    """The series of derivatives theta(F) for F in W; None if it is zero."""
    if not isinstance(theta, DualForm):
        raise ContextMismatchError("differentiation direction must be a DualForm")
    images = [apply_operator(theta, f) for f in W.reduced_basis]
    nonzero = [g for g in images if not g.is_zero]
    if not nonzero:
        return None
    return LinearSeries.of_forms(nonzero)


@dataclass(frozen=True)
class HilbertFunction:
    """Graded dimensions of an apolar algebra, indexed t = 0..d."""

    dims: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, t: int) -> int:
        return self.dims[t]

    def __iter__(self):
        return iter(self.dims)

    def __len__(self) -> int:
        return len(self.dims)


def catalecticant_matrix(W: LinearSeries, t: int) -> QMatrix:
    """Matrix of the degree-t pairing against a reduced basis of W.

    Columns are indexed by degree-t dual monomials in graded-lex order;
    the rows stack, for each basis form, the coefficient vector of the
    image in degree d-t.  Kernel = degree-t annihilator piece, rank =
    degree-t dimension of the apolar algebra.
    """
    d = W.degree
    if t < 0 or t > d:
        raise DegreeRangeError(f"degree {t} outside 0..{d}")
    ctx = W.context
    cols = monomial_basis(ctx, t)
    out_monos = monomial_basis(ctx, d - t)
    out_index = {m: i for i, m in enumerate(out_monos)}
    basis = W.reduced_basis
    nrows = len(basis) * len(out_monos)
    data: list[list[Rational]] = [[Fraction(0)] * len(cols) for _ in range(nrows)]
    for bi, f in enumerate(basis):
        base = bi * len(out_monos)
        for mf, c in f.terms.items():
            for ci, e in enumerate(cols):
                factor = 1
                for a, b in zip(mf, e):
                    if b:
                        if a < b:
                            factor = 0
                            break
                        factor *= math.perm(a, b)
                if not factor:
                    continue
                target = tuple(a - b for a, b in zip(mf, e))
                data[base + out_index[target]][ci] += c * factor
    return QMatrix.from_rows(data) if nrows else QMatrix(0, len(cols), ())


def hilbert_function(W: LinearSeries) -> HilbertFunction:
    """dims[t] = rank of the degree-t catalecticant, t = 0..d."""
    dims = tuple(rank(catalecticant_matrix(W, t)) for t in range(W.degree + 1))
    n = len(W.context)
    d = W.degree
    k = W.dim
    assert dims[0] == 1
    assert all(dims[t] <= math.comb(n + t - 1, t) for t in range(d + 1))
    assert all(dims[t] <= k * math.comb(n + d - t - 1, d - t) for t in range(d + 1))
    return HilbertFunction(dims)


def apolar_length(W: LinearSeries) -> int:
    """Total dimension of the apolar algebra (= dimension of the span of
    all derivatives of all orders of the series)."""
    return hilbert_function(W).total


def _dual_from_vector(
    ctx: VarContext, monos: list[Monomial], vec
) -> DualForm:
    return DualForm(ctx, {m: c for m, c in zip(monos, vec) if c})


def apolar_ideal_component(W: LinearSeries, t: int) -> list[DualForm]:
    """Basis of the degree-t piece of the annihilator of W.

    For t above the series degree the piece is the full dual space, so
    the monomial basis itself is returned.
    """
    if t < 0:
        raise DegreeRangeError("degree must be non-negative")
    ctx = W.context
    monos = monomial_basis(ctx, t)
    if t > W.degree:
        return [DualForm(ctx, {m: Fraction(1)}) for m in monos]
    vectors = kernel_basis(catalecticant_matrix(W, t))
    return [_dual_from_vector(ctx, monos, v) for v in vectors]


def _shift(terms: dict[Monomial, Rational], pos: int) -> dict[Monomial, Rational]:
    """Multiply a dual vector by the pos-th dual variable."""
    return {
        m[:pos] + (m[pos] + 1,) + m[pos + 1 :]: c for m, c in terms.items()
    }


@dataclass(frozen=True)
class GeneratorDegrees:
    """Number of minimal annihilator generators per degree, and the top
    degree delta that still needs one."""

    counts: dict[int, int]
    delta: int


def minimal_generator_degrees(W: LinearSeries) -> GeneratorDegrees:
    """Count minimal generators of the annihilator ideal in each degree.

    New generators in degree t are the quotient of the degree-t ideal
    piece by the span of (dual variables) * (degree t-1 piece).  The top
    degree is always at most d+1, where the ideal piece is everything.
    """
    ctx = W.context
    n = len(ctx)
    d = W.degree
    counts: dict[int, int] = {}
    prev: list[DualForm] = []
    for t in range(1, d + 2):
        if t <= d:
            kern = apolar_ideal_component(W, t)
            k_dim = len(kern)
        else:
            kern = []
            k_dim = math.comb(n + t - 1, t)
        span = SpanBuilder()
        for psi in prev:
            for i in range(n):
                span.add(_shift(psi.terms, i))
        assert span.dim <= k_dim
        fresh = k_dim - span.dim
        if fresh:
            counts[t] = fresh
        prev = kern
    return GeneratorDegrees(counts, max(counts))


def minimal_generators(
    W: LinearSeries, max_degree: int | None = None
) -> dict[int, list[DualForm]]:
    """Explicit minimal generators (a deterministic choice) per degree."""
    ctx = W.context
    n = len(ctx)
    d = W.degree
    upto = max_degree if max_degree is not None else d + 1
    out: dict[int, list[DualForm]] = {}
    prev: list[DualForm] = []
    for t in range(1, upto + 1):
        if t <= d:
            candidates = apolar_ideal_component(W, t)
        else:
            candidates = [
                DualForm(ctx, {m: Fraction(1)}) for m in monomial_basis(ctx, t)
            ]
        span = SpanBuilder()
        for psi in prev:
            for i in range(n):
                span.add(_shift(psi.terms, i))
        gens = [c for c in candidates if span.add(c.terms)]
        if gens:
            out[t] = gens
        prev = candidates
    return out


def colon_component(W: LinearSeries, theta: DualForm, t: int) -> list[DualForm]:
    """Degree-t piece of the colon of the annihilator by theta.

    Computed directly as the dual forms of degree t whose product with
    theta annihilates W, via one stacked kernel computation; no use is
    made of the annihilator of the derivative series, so this can be
    compared against it as an independent identity check.
    """
    if not isinstance(theta, DualForm) or theta.context != W.context:
        raise ContextMismatchError("colon divisor must be a DualForm over the same context")
    if theta.is_zero:
        raise ValueError("colon divisor must be nonzero")
    if not theta.is_homogeneous():
        raise ValueError("colon divisor must be homogeneous")
    if t < 0:
        raise DegreeRangeError("degree must be non-negative")
    ctx = W.context
    e = theta.homogeneous_degree()
    d = W.degree
    monos_t = monomial_basis(ctx, t)
    if t + e > d:
        return [DualForm(ctx, {m: Fraction(1)}) for m in monos_t]
    monos_big = monomial_basis(ctx, t + e)
    big_index = {m: i for i, m in enumerate(monos_big)}
    ideal_vectors = kernel_basis(catalecticant_matrix(W, t + e))
    ncols = len(monos_t) + len(ideal_vectors)
    data: list[list[Rational]] = [[Fraction(0)] * ncols for _ in monos_big]
    for ci, m in enumerate(monos_t):
        for me, ce in theta.terms.items():
            target = tuple(a + b for a, b in zip(m, me))
            data[big_index[target]][ci] += ce
    for ki, vec in enumerate(ideal_vectors):
        col = len(monos_t) + ki
        for bi, c in enumerate(vec):
            if c:
                data[bi][col] = -c
    solutions = kernel_basis(QMatrix.from_rows(data))
    projections = [v[: len(monos_t)] for v in solutions]
    projections = [p for p in projections if any(p)]
    if not projections:
        return []
    reduced = row_space_basis(QMatrix.from_rows(projections))
    return [_dual_from_vector(ctx, monos_t, v) for v in reduced]


def quotient_length_with_linear(W: LinearSeries, partial: DualForm) -> int:
    """Length of the dual ring modulo (annihilator of W) + (one linear dual form).

    Summed degree by degree from explicit spans; degrees above d
    contribute nothing because the annihilator piece is everything
    there.  No derivative series is formed, so the value can be checked
    against the difference of apolar lengths.
    """
    if not isinstance(partial, DualForm) or partial.context != W.context:
        raise ContextMismatchError("expected a DualForm over the series context")
    if partial.is_zero or partial.degree() != 1 or not partial.is_homogeneous():
        raise ValueError("quotient direction must be a nonzero linear dual form")
    ctx = W.context
    n = len(ctx)
    total = 0
    for t in range(W.degree + 1):
        full = math.comb(n + t - 1, t)
        span = SpanBuilder()
        if t >= 1:
            for psi in apolar_ideal_component(W, t):
                span.add(psi.terms)
            for m in monomial_basis(ctx, t - 1):
                span.add(
                    {
                        tuple(a + b for a, b in zip(m, me)): ce
                        for me, ce in partial.terms.items()
                    }
                )
        total += full - span.dim
    return total


def diff_closure_dim(f: Polynomial) -> int:
    """Dimension of the span of all iterated partials of f (f included).

    Works for non-homogeneous input; saturates breadth-first, which must
    stop because each step drops degree.
    """
    if f.is_zero:
        raise ValueError("the derivative closure of zero is not defined")
    span = SpanBuilder()
    span.add(f.terms)
    frontier = [f]
    n = len(f.context)
    while frontier:
        fresh = []
        for g in frontier:
            for i in range(n):
                h = g.partial(i)
                if h.terms and span.add(h.terms):
                    fresh.append(h)
        frontier = fresh
    return span.dim
