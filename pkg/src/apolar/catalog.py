"""Builtin form families, their closed-form Hilbert data, and the
reference bound tables.

Families
--------
* ``det:N``     generic N x N determinant, degree N in N^2 variables x[i,j]
* ``perm:N``    generic N x N permanent (no closed forms; exercises the
                generic machinery)
* ``pf:N``      Pfaffian of a generic 2N x 2N skew matrix on the C(2N,2)
                coordinates x[i,j], i < j
* ``symdet:N``  determinant of a generic symmetric matrix on the
                C(N+1,2) coordinates x[i,j], i <= j
* ``monprod:N`` the product x[1]*...*x[N]
* ``minors:M,N,D`` the series of D x D minors of a generic M x N matrix
                (1 <= D <= M <= N)
* ``matmul:P,Q,R`` the series of entries of the product of a generic
                P x Q matrix x and Q x R matrix y; the z[i,j] variables
                of the associated trilinear tensor are declared in the
                context but unused by the series

Skew and symmetric matrices are represented on their independent
coordinates only, which is what the closed-form dimension counts refer
to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .apolarity import (
    HilbertFunction,
    LinearSeries,
    apolar_length,
    minimal_generator_degrees,
)
from .bounds import (
    KIND_LOWER_CACTUS,
    KIND_LOWER_WARING,
    KIND_UPPER_CACTUS,
    KIND_UPPER_WARING,
    bernardi_ranestad_upper,
    derivative_bound,
    landsberg_teitler_det,
    sylvester_bound,
    ranestad_schreyer_bound,
)
from .poly import (
    DualForm,
    Polynomial,
    Rational,
    VarContext,
    parse_dual_form,
)

FAMILIES = ("det", "perm", "pf", "symdet", "monprod", "minors", "matmul")


class NoClosedFormError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}"
            )
        if any(p < 1 for p in self.params):
            raise ValueError("family parameters must be positive")
        if self.family in ("det", "perm", "pf", "symdet", "monprod"):
            if len(self.params) != 1:
                raise ValueError(f"{self.family} takes one parameter")
        elif self.family == "minors":
            if len(self.params) != 3:
                raise ValueError("minors takes parameters M,N,D")
            m, n, d = self.params
            if not (d <= m <= n):
                raise ValueError("minors parameters must satisfy D <= M <= N")
        elif self.family == "matmul":
            if len(self.params) != 3:
                raise ValueError("matmul takes parameters P,Q,R")

    @property
    def id(self) -> str:
        return f"{self.family}:{','.join(str(p) for p in self.params)}"


def parse_family(text: str) -> FamilySpec:
    """Parse an id like ``det:3`` or ``minors:3,3,2``."""
    family, sep, rest = text.partition(":")
    if not sep or not rest:
        raise ValueError(f"malformed form id {text!r}; expected family:params")
    try:
        params = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise ValueError(f"malformed parameters {rest!r} in form id {text!r}") from None
    return FamilySpec(family, params)


# ----------------------------------------------------------------------
# contexts and generic expansion helpers


def grid_context(rows: int, cols: int, base: str = "x") -> VarContext:
    names = tuple(
        f"{base}[{i},{j}]" for i in range(1, rows + 1) for j in range(1, cols + 1)
    )
    return VarContext(names)


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def _permutations(n: int):
    import itertools

    return itertools.permutations(range(n))


def _matrix_polynomial(
    ctx: VarContext, entry_pos, n: int, signed: bool
) -> Polynomial:
    """Sum over permutations of products of matrix entries.

    ``entry_pos(i, j)`` gives the context position of the (i, j) entry,
    or None for a structural zero.
    """
    terms: dict[tuple[int, ...], Rational] = {}
    width = len(ctx)
    for perm in _permutations(n):
        mono = [0] * width
        ok = True
        for i, j in enumerate(perm):
            pos = entry_pos(i, j)
            if pos is None:
                ok = False
                break
            mono[pos] += 1
        if not ok:
            continue
        sign = _perm_sign(perm) if signed else 1
        key = tuple(mono)
        c = terms.get(key, Fraction(0)) + sign
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return Polynomial(ctx, terms)


def build_determinant(n: int, ctx: VarContext | None = None) -> Polynomial:
    ctx = ctx or grid_context(n, n)
    return _matrix_polynomial(ctx, lambda i, j: ctx.position(f"x[{i+1},{j+1}]"), n, True)


def build_permanent(n: int) -> Polynomial:
    ctx = grid_context(n, n)
    return _matrix_polynomial(ctx, lambda i, j: ctx.position(f"x[{i+1},{j+1}]"), n, False)


def skew_context(n: int) -> VarContext:
    """Coordinates x[i,j], 1 <= i < j <= 2n, of a 2n x 2n skew matrix."""
    names = tuple(
        f"x[{i},{j}]"
        for i in range(1, 2 * n + 1)
        for j in range(i + 1, 2 * n + 1)
    )
    return VarContext(names)


def _pair_partitions(elems: tuple[int, ...]):
    if not elems:
        yield ()
        return
    a = elems[0]
    for k in range(1, len(elems)):
        b = elems[k]
        rest = elems[1:k] + elems[k + 1 :]
        for sub in _pair_partitions(rest):
            yield ((a, b),) + sub


def pfaffian_on(ctx: VarContext, indices: tuple[int, ...]) -> Polynomial:
    """Pfaffian of the skew submatrix on the given (even-sized, sorted)
    index set, as a polynomial in the ambient skew context."""
    if len(indices) % 2:
        raise ValueError("a Pfaffian needs an even index set")
    if not indices:
        return Polynomial.constant(ctx, 1)
    order = {v: i for i, v in enumerate(indices)}
    width = len(ctx)
    terms: dict[tuple[int, ...], Rational] = {}
    for pairs in _pair_partitions(tuple(indices)):
        flat = [order[v] for pair in pairs for v in pair]
        sign = _perm_sign(tuple(flat))
        mono = [0] * width
        for a, b in pairs:
            mono[ctx.position(f"x[{a},{b}]")] += 1
        key = tuple(mono)
        c = terms.get(key, Fraction(0)) + sign
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return Polynomial(ctx, terms)


def build_pfaffian(n: int) -> Polynomial:
    ctx = skew_context(n)
    return pfaffian_on(ctx, tuple(range(1, 2 * n + 1)))


def symmetric_context(n: int) -> VarContext:
    names = tuple(
        f"x[{i},{j}]" for i in range(1, n + 1) for j in range(i, n + 1)
    )
    return VarContext(names)


def build_symmetric_determinant(n: int) -> Polynomial:
    ctx = symmetric_context(n)

    def pos(i: int, j: int) -> int:
        a, b = min(i, j) + 1, max(i, j) + 1
        return ctx.position(f"x[{a},{b}]")

    return _matrix_polynomial(ctx, pos, n, True)


def monprod_context(n: int) -> VarContext:
    return VarContext(tuple(f"x[{i}]" for i in range(1, n + 1)))


def build_monomial_product(n: int) -> Polynomial:
    ctx = monprod_context(n)
    return Polynomial(ctx, {(1,) * n: Fraction(1)})


def build_minors_series(m: int, n: int, d: int) -> list[Polynomial]:
    import itertools

    ctx = grid_context(m, n)
    forms = []
    for rows in itertools.combinations(range(m), d):
        for cols in itertools.combinations(range(n), d):
            forms.append(
                _matrix_polynomial(
                    ctx,
                    lambda i, j, rows=rows, cols=cols: ctx.position(
                        f"x[{rows[i]+1},{cols[j]+1}]"
                    ),
                    d,
                    True,
                )
            )
    return forms


def matmul_context(p: int, q: int, r: int) -> VarContext:
    names = [f"x[{i},{j}]" for i in range(1, p + 1) for j in range(1, q + 1)]
    names += [f"y[{i},{j}]" for i in range(1, q + 1) for j in range(1, r + 1)]
    names += [f"z[{i},{j}]" for i in range(1, r + 1) for j in range(1, p + 1)]
    return VarContext(tuple(names))


def build_matmul_series(p: int, q: int, r: int) -> list[Polynomial]:
    ctx = matmul_context(p, q, r)
    width = len(ctx)
    forms = []
    for i in range(1, p + 1):
        for k in range(1, r + 1):
            terms: dict[tuple[int, ...], Rational] = {}
            for j in range(1, q + 1):
                mono = [0] * width
                mono[ctx.position(f"x[{i},{j}]")] += 1
                mono[ctx.position(f"y[{j},{k}]")] += 1
                terms[tuple(mono)] = Fraction(1)
            forms.append(Polynomial(ctx, terms))
    return forms


def build(spec: FamilySpec) -> LinearSeries:
    """Exact polynomial construction of a builtin family."""
    if spec.family == "det":
        return LinearSeries.of_form(build_determinant(spec.params[0]))
    if spec.family == "perm":
        return LinearSeries.of_form(build_permanent(spec.params[0]))
    if spec.family == "pf":
        return LinearSeries.of_form(build_pfaffian(spec.params[0]))
    if spec.family == "symdet":
        return LinearSeries.of_form(build_symmetric_determinant(spec.params[0]))
    if spec.family == "monprod":
        return LinearSeries.of_form(build_monomial_product(spec.params[0]))
    if spec.family == "minors":
        return LinearSeries.of_forms(build_minors_series(*spec.params))
    if spec.family == "matmul":
        return LinearSeries.of_forms(build_matmul_series(*spec.params))
    raise AssertionError(spec.family)


def canonical_partial_text(spec: FamilySpec) -> str:
    """The distinguished derivative direction for each family (the one
    whose orbit under the family's symmetry group spans the dual space)."""
    if spec.family in ("det", "perm", "minors"):
        return "d[1,1]"
    if spec.family == "pf":
        return "d[1,2]"
    if spec.family == "symdet":
        n = spec.params[0]
        return f"d[{n},{n}]"
    if spec.family == "monprod":
        return "d[1]"
    if spec.family == "matmul":
        return "d_x[1,1] + d_y[1,1]"
    raise AssertionError(spec.family)


def canonical_partial(spec: FamilySpec, W: LinearSeries) -> DualForm:
    return parse_dual_form(canonical_partial_text(spec), W.context)


# ----------------------------------------------------------------------
# closed forms


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """N(n, k) = C(n, k) * C(n, k-1) / n; rows sum to the Catalan number."""
    if k < 1 or k > n:
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def closed_form_hilbert(spec: FamilySpec) -> HilbertFunction:
    """Formula values of the Hilbert function, no polynomial arithmetic.

    det:     C(n,t)^2                    pf:      C(2n, 2t)
    symdet:  Narayana numbers N(n+1,t+1) monprod: C(n,t)
    minors:  C(m,t)*C(n,t), t <= d       matmul:  (1, pq+qr, pr)

    The symmetric determinant values are the Narayana row of n+1 (their
    sum is the Catalan number C_{n+1}), which matches the brute-force
    computation; the permanent has no known closed form.
    """
    if spec.family == "det":
        n = spec.params[0]
        return HilbertFunction(tuple(math.comb(n, t) ** 2 for t in range(n + 1)))
    if spec.family == "pf":
        n = spec.params[0]
        return HilbertFunction(tuple(math.comb(2 * n, 2 * t) for t in range(n + 1)))
    if spec.family == "symdet":
        n = spec.params[0]
        return HilbertFunction(tuple(narayana(n + 1, t + 1) for t in range(n + 1)))
    if spec.family == "monprod":
        n = spec.params[0]
        return HilbertFunction(tuple(math.comb(n, t) for t in range(n + 1)))
    if spec.family == "minors":
        m, n, d = spec.params
        return HilbertFunction(
            tuple(math.comb(m, t) * math.comb(n, t) for t in range(d + 1))
        )
    if spec.family == "matmul":
        p, q, r = spec.params
        return HilbertFunction((1, p * q + q * r, p * r))
    raise NoClosedFormError(f"no closed-form Hilbert function for {spec.family!r}")


# ----------------------------------------------------------------------
# reference tables


LABEL_SYLVESTER = "Sylvester"
LABEL_LT = "Landsberg-Teitler"
LABEL_RSS = "Ranestad-Schreyer-Shafiei"
LABEL_DERIVATIVE = "Invariant derivative"
LABEL_CR_UPPER = "Upper bound for cactus rank"
LABEL_R_UPPER = "Upper bound for Waring rank"


@dataclass(frozen=True)
class TableRow:
    label: str
    kind: str
    values: tuple[Rational, ...]


@dataclass(frozen=True)
class TableDoc:
    family: str
    ns: tuple[int, ...]
    rows: tuple[TableRow, ...]


def _det_column(n: int) -> dict[str, Rational]:
    sylv = math.comb(n, n // 2) ** 2
    return {
        LABEL_SYLVESTER: Fraction(sylv),
        LABEL_LT: Fraction(landsberg_teitler_det(n)),
        LABEL_RSS: Fraction(math.comb(2 * n, n), 2),
        LABEL_DERIVATIVE: Fraction(math.comb(2 * n, n) - math.comb(2 * n - 2, n - 1)),
        LABEL_CR_UPPER: Fraction(math.comb(2 * n, n) - 2),
        LABEL_R_UPPER: Fraction(5, 6) ** (n // 3) * (2 ** (n - 1)) * math.factorial(n),
    }


def _pf_column(n: int) -> dict[str, Rational]:
    return {
        LABEL_SYLVESTER: Fraction(math.comb(2 * n, 2 * (n // 2))),
        LABEL_RSS: Fraction(2 ** (2 * n - 2)),
        LABEL_DERIVATIVE: Fraction(3 * 2 ** (2 * n - 3)),
        LABEL_CR_UPPER: Fraction(2 ** (2 * n - 1)),
        LABEL_R_UPPER: Fraction(double_factorial(2 * n - 1) * 2 ** (n - 1)),
    }


def _symdet_column(n: int) -> dict[str, Rational]:
    return {
        LABEL_SYLVESTER: Fraction(max(narayana(n + 1, t + 1) for t in range(n + 1))),
        LABEL_RSS: Fraction(catalan(n + 1), 2),
        LABEL_DERIVATIVE: Fraction(catalan(n + 1) - catalan(n)),
        LABEL_CR_UPPER: Fraction(catalan(n + 1)),
    }


_TABLE_LAYOUT = {
    "det": (
        (LABEL_SYLVESTER, KIND_LOWER_CACTUS),
        (LABEL_LT, KIND_LOWER_WARING),
        (LABEL_RSS, KIND_LOWER_CACTUS),
        (LABEL_DERIVATIVE, KIND_LOWER_CACTUS),
        (LABEL_CR_UPPER, KIND_UPPER_CACTUS),
        (LABEL_R_UPPER, KIND_UPPER_WARING),
    ),
    "pf": (
        (LABEL_SYLVESTER, KIND_LOWER_CACTUS),
        (LABEL_RSS, KIND_LOWER_CACTUS),
        (LABEL_DERIVATIVE, KIND_LOWER_CACTUS),
        (LABEL_CR_UPPER, KIND_UPPER_CACTUS),
        (LABEL_R_UPPER, KIND_UPPER_WARING),
    ),
    "symdet": (
        (LABEL_SYLVESTER, KIND_LOWER_CACTUS),
        (LABEL_RSS, KIND_LOWER_CACTUS),
        (LABEL_DERIVATIVE, KIND_LOWER_CACTUS),
        (LABEL_CR_UPPER, KIND_UPPER_CACTUS),
    ),
}

_TABLE_COLUMNS = {"det": _det_column, "pf": _pf_column, "symdet": _symdet_column}


def closed_form_table(family: str, n_max: int) -> TableDoc:
    """Closed-form bound table for n = 2..n_max."""
    if family not in _TABLE_LAYOUT:
        raise ValueError(f"no reference table for family {family!r}")
    if n_max < 2:
        raise ValueError("table needs n_max >= 2")
    ns = tuple(range(2, n_max + 1))
    columns = [_TABLE_COLUMNS[family](n) for n in ns]
    rows = tuple(
        TableRow(label, kind, tuple(col[label] for col in columns))
        for label, kind in _TABLE_LAYOUT[family]
    )
    return TableDoc(family, ns, rows)


def verify_table_column(family: str, n: int) -> dict[str, Rational]:
    """Recompute the table cells that have a polynomial-arithmetic route.

    The Landsberg-Teitler row and the determinant Waring upper bound are
    pure closed forms with no second route here, so they are skipped;
    the Pfaffian Waring upper bound is checked as (number of monomials)
    times 2^(n-1).
    """
    spec = FamilySpec(family, (n,))
    W = build(spec)
    F = W.reduced_basis[0]
    dl = canonical_partial(spec, W)
    out = {
        LABEL_SYLVESTER: Fraction(sylvester_bound(W)),
        LABEL_RSS: ranestad_schreyer_bound(W),
        LABEL_DERIVATIVE: Fraction(derivative_bound(W, dl)),
    }
    if family == "det":
        var = Polynomial.named_variable(W.context, f"x[{n},{n}]")
        out[LABEL_CR_UPPER] = Fraction(bernardi_ranestad_upper(F, var))
    else:
        out[LABEL_CR_UPPER] = Fraction(apolar_length(W))
    if family == "pf":
        out[LABEL_R_UPPER] = Fraction(len(F.terms) * 2 ** (n - 1))
    return out


# ----------------------------------------------------------------------
# the power-sum identity for products of variables


def monomial_decomposition(n: int) -> tuple[list[Polynomial], list[Rational]]:
    """The 2^(n-1) signed power sums averaging to x[1]*...*x[n].

    Sign vectors run over all choices with first sign +1; the form for a
    sign vector is the signed sum of the variables, its coefficient the
    product of the signs over 2^(n-1) * n!.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    import itertools

    ctx = monprod_context(n)
    scale = Fraction(1, 2 ** (n - 1) * math.factorial(n))
    forms = []
    coeffs = []
    for rest in itertools.product((1, -1), repeat=n - 1):
        signs = (1,) + rest
        terms = {}
        for i, s in enumerate(signs):
            mono = [0] * n
            mono[i] = 1
            terms[tuple(mono)] = Fraction(s)
        forms.append(Polynomial(ctx, terms))
        prod_sign = 1
        for s in signs:
            prod_sign *= s
        coeffs.append(prod_sign * scale)
    return forms, coeffs


# ----------------------------------------------------------------------
# matrix multiplication


def matmul_bound(p: int, q: int, r: int) -> tuple[int, int]:
    """Derivative lower bound for the simultaneous rank of the product
    entries and the induced tensor-rank lower bound.

    The direction is the sum of the duals of x[1,1] and y[1,1], which
    lies in neither of the two proper invariant subspaces of the dual
    space.  The computed value must agree with the closed form
    pq+qr+pr-p-r+1; the tensor bound is half of it, rounded up.
    """
    spec = FamilySpec("matmul", (p, q, r))
    W = build(spec)
    dl = canonical_partial(spec, W)
    value = derivative_bound(W, dl)
    closed = p * q + q * r + p * r - p - r + 1
    if value != closed:
        raise RuntimeError(
            f"matmul derivative bound {value} disagrees with closed form {closed}"
        )
    return value, -(-value // 2)


# ----------------------------------------------------------------------
# computed generator-degree sanity used by the table verify mode


def delta_is_two(spec: FamilySpec) -> bool:
    """True when the annihilator is generated in degree exactly 2."""
    gens = minimal_generator_degrees(build(spec))
    return gens.delta == 2 and set(gens.counts) == {2}
