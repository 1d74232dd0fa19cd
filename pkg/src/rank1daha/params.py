"""Exact scalar arithmetic in the parameters q, a, b, c, d.

Every coefficient in the kernel is a :class:`RatFunc`: an exact rational
function of the five parameters with rational coefficients, optionally
carrying a linear term in the adjoined square root s with s^2 = abcd/q.
Equality of scalars is decided structurally on reduced fractions, so the
identity checks in the rest of the package are exact, never numeric.

:class:`Params` fixes how the five parameter names are interpreted: as free
indeterminates (symbolic mode), as concrete rationals (specialized mode), or
as derived values such as the shifted family (qa, qb, c, d) and the dual
family (s, ab/s, ac/s, ad/s).  All derived scalar quantities (elementary
symmetric polynomials, structure constants, Casimir scalar, eigenvalues) are
computed from those values by a single code path.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import random

import sympy
from sympy import QQ
from sympy.polys.fields import field as _make_field

from .errors import (
    DegenerateParameters,
    DivisionByZero,
    ExtensionDisabled,
    MissingAssignment,
)

__all__ = [
    "PARAM_NAMES",
    "RatFunc",
    "Params",
    "StructureConstants",
    "make_params",
    "ratfunc_arith",
    "elementary_symmetric",
    "structure_constants",
    "eigenvalue",
    "random_admissible_point",
    "prob_equal",
]

PARAM_NAMES = ("q", "a", "b", "c", "d")

_FIELD, _GQ, _GA, _GB, _GC, _GD = _make_field("q,a,b,c,d", QQ)
_RING_GENS = _FIELD.zero.numer.ring.gens
_QQ_ZERO = QQ.zero
_QQ_ONE = QQ.one
# the square of the adjoined symbol s
_S_SQUARE = (_GA * _GB * _GC * _GD) / _GQ

_Rational = int | Fraction


def _to_qq(x: _Rational):
    if isinstance(x, int):
        return QQ(x)
    return QQ(x.numerator, x.denominator)


def _frac_of_ground(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


class RatFunc:
    """Exact rational function in q, a, b, c, d, linear in s (s^2 = abcd/q).

    Immutable.  The two components ``r0`` (rational part) and ``r1``
    (coefficient of s) are reduced fractions of sparse polynomials, so
    structural equality of components is semantic equality: abcd/q is not a
    square in the rational function field, hence r0 + r1*s = 0 only for
    r0 = r1 = 0, and the extension by s stays a field.

    Constant values (the overwhelmingly common case once parameters are
    specialized) are kept as a single reduced rational in ``g`` and combined
    with plain rational arithmetic; the field components are materialized
    only when a genuinely symbolic operand enters.  Construction normalizes,
    so an s-free instance in field representation is never constant.
    """

    __slots__ = ("r0", "r1", "g")

    def __init__(self, r0, r1=None):
        if (r1 is None or not r1) and r0.numer.is_ground and r0.denom.is_ground:
            self.g = (r0.numer.LC / r0.denom.LC) if r0 else _QQ_ZERO
            self.r0 = None
            self.r1 = None
        else:
            self.g = None
            self.r0 = r0
            self.r1 = _FIELD.zero if r1 is None else r1

    @staticmethod
    def _from_ground(value) -> "RatFunc":
        out = object.__new__(RatFunc)
        out.g = value
        out.r0 = None
        out.r1 = None
        return out

    def _fe(self):
        """The (r0, r1) field components, materialized on demand."""
        if self.r0 is None:
            self.r0 = _FIELD.ground_new(self.g)
            self.r1 = _FIELD.zero
        return self.r0, self.r1

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc._from_ground(_QQ_ZERO)

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc._from_ground(_QQ_ONE)

    @staticmethod
    def from_rational(x: _Rational) -> "RatFunc":
        return RatFunc._from_ground(_to_qq(x))

    @staticmethod
    def gen(name: str) -> "RatFunc":
        return _GENS[name]

    @staticmethod
    def s() -> "RatFunc":
        """The adjoined square root itself: s with s^2 = abcd/q."""
        return RatFunc(_FIELD.zero, _FIELD.one)

    @staticmethod
    def parse(text: str) -> "RatFunc":
        """Build a scalar from a Python-syntax expression in q,a,b,c,d,s.

        Intended for frozen expected values in tests and for documentation;
        command-line input goes through the expression parser instead.
        """
        expr = sympy.cancel(sympy.sympify(text, rational=True))
        syms = {str(f) for f in expr.free_symbols}
        if not syms <= {"q", "a", "b", "c", "d", "s"}:
            raise ValueError(f"unknown symbols in scalar literal: {sorted(syms)}")
        if "s" not in syms:
            return RatFunc(_FIELD.from_expr(expr))
        s_sym = sympy.Symbol("s")
        num, den = expr.as_numer_denom()
        if s_sym in den.free_symbols:
            raise ValueError("scalar literal may not carry s in a denominator")
        poly = sympy.Poly(num, s_sym)
        if poly.degree() > 1:
            raise ValueError("scalar literal must be linear in s")
        r0_expr = poly.coeff_monomial(1) / den
        r1_expr = poly.coeff_monomial(s_sym) / den
        return RatFunc(_FIELD.from_expr(r0_expr), _FIELD.from_expr(r1_expr))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        if self.g is not None:
            return not self.g
        return (not self.r0) and (not self.r1)

    def has_s(self) -> bool:
        return self.g is None and bool(self.r1)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.from_rational(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.g is not None and o.g is not None:
            return RatFunc._from_ground(self.g + o.g)
        a0, a1 = self._fe()
        b0, b1 = o._fe()
        return RatFunc(a0 + b0, a1 + b1)

    __radd__ = __add__

    def __neg__(self):
        if self.g is not None:
            return RatFunc._from_ground(-self.g)
        return RatFunc(-self.r0, -self.r1)

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.g is not None and o.g is not None:
            return RatFunc._from_ground(self.g - o.g)
        a0, a1 = self._fe()
        b0, b1 = o._fe()
        return RatFunc(a0 - b0, a1 - b1)

    def __rsub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.g is not None and o.g is not None:
            return RatFunc._from_ground(self.g * o.g)
        a0, a1 = self._fe()
        b0, b1 = o._fe()
        if not a1 and not b1:
            return RatFunc(a0 * b0)
        return RatFunc(
            a0 * b0 + a1 * b1 * _S_SQUARE,
            a0 * b1 + a1 * b0,
        )

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero scalar")
        if self.g is not None:
            return RatFunc._from_ground(_QQ_ONE / self.g)
        if not self.r1:
            return RatFunc(_FIELD.one / self.r0)
        norm = self.r0 * self.r0 - self.r1 * self.r1 * _S_SQUARE
        # norm = 0 would force abcd/q to be a square in the function field
        return RatFunc(self.r0 / norm, -self.r1 / norm)

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = RatFunc.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison and hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.g is not None or o.g is not None:
            if self.g is not None and o.g is not None:
                return self.g == o.g
            # field representation is never constant, by construction
            return False
        return self.r0 == o.r0 and self.r1 == o.r1

    def __hash__(self) -> int:
        if self.g is not None:
            return hash(_frac_of_ground(self.g))
        return hash((self.r0, self.r1))

    # -- evaluation ----------------------------------------------------

    def _eval_component(self, comp, vals: Sequence) -> Fraction:
        num = comp.numer.evaluate(list(zip(_RING_GENS, vals)))
        den = comp.denom.evaluate(list(zip(_RING_GENS, vals)))
        if den == 0:
            raise DivisionByZero("evaluation point hits a denominator zero")
        return _frac_of_ground(num) / _frac_of_ground(den)

    def evaluate(self, point: Mapping[str, _Rational]) -> tuple[Fraction, Fraction]:
        """Evaluate both components at a rational point, leaving s formal."""
        if self.g is not None:
            return (_frac_of_ground(self.g), Fraction(0))
        vals = [_to_qq(Fraction(point[name])) for name in PARAM_NAMES]
        return (self._eval_component(self.r0, vals), self._eval_component(self.r1, vals))

    def subs(self, point: Mapping[str, _Rational]) -> "RatFunc":
        """Substitute rational values for the five parameters (s stays formal)."""
        if self.g is not None:
            return self
        v0, v1 = self.evaluate(point)
        return RatFunc(_FIELD(_to_qq(v0)), _FIELD(_to_qq(v1)))

    def as_fraction(self) -> Fraction:
        """Return the value of a constant scalar as an exact rational."""
        if self.g is None:
            raise ValueError(f"scalar is not a rational constant: {self}")
        return _frac_of_ground(self.g)

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        r0, r1 = self._fe()
        if not r1:
            return str(r0)
        if not r0:
            return f"({r1})*s"
        return f"({r0}) + ({r1})*s"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


_GENS: dict[str, RatFunc] = {
    "q": RatFunc(_GQ),
    "a": RatFunc(_GA),
    "b": RatFunc(_GB),
    "c": RatFunc(_GC),
    "d": RatFunc(_GD),
}

_ZERO = RatFunc.zero()
_ONE = RatFunc.one()


def ratfunc_arith(op: str, x: RatFunc, y: RatFunc | None = None):
    """Uniform entry point for scalar arithmetic.

    ``op`` is one of add, sub, mul, div, neg, inv, eq.  Binary operations
    require ``y``; div and inv raise :class:`DivisionByZero` on a zero
    divisor.  ``eq`` is exact structural equality of canonical forms.
    """
    unary = {"neg": lambda v: -v, "inv": lambda v: v.inv()}
    binary = {
        "add": lambda u, v: u + v,
        "sub": lambda u, v: u - v,
        "mul": lambda u, v: u * v,
        "div": lambda u, v: u / v,
        "eq": lambda u, v: u == v,
    }
    if op in unary:
        if y is not None:
            raise ValueError(f"{op} is unary")
        return unary[op](x)
    if op in binary:
        if y is None:
            raise ValueError(f"{op} needs two operands")
        return binary[op](x, y)
    raise ValueError(f"unknown scalar operation {op!r}")


# ---------------------------------------------------------------------------
# Parameter sets


def _check_admissible(vals: Mapping[str, Fraction], bound: int) -> None:
    q = vals["q"]
    if q == 0:
        raise DegenerateParameters("q = 0")
    power = Fraction(1)
    for m in range(1, bound + 1):
        power *= q
        if power == 1:
            raise DegenerateParameters("q^m = 1", m)
    for name in ("a", "b", "c", "d"):
        if vals[name] == 0:
            raise DegenerateParameters(f"{name} = 0")
    e4 = vals["a"] * vals["b"] * vals["c"] * vals["d"]
    power = Fraction(1)
    for m in range(0, bound + 1):
        if e4 * power == 1:
            raise DegenerateParameters("abcd*q^m = 1", m)
        power *= q
    if vals["a"] * vals["b"] == 1:
        raise DegenerateParameters("ab = 1")


@dataclass(frozen=True)
class Params:
    """A validated interpretation of the five parameter names.

    ``mode`` is "symbolic" or "specialized".  ``assignments`` holds the
    rational values in specialized mode.  Derived families (shifted, dual)
    carry their values in ``value_override`` and keep the mode of the family
    they came from.
    """

    mode: str
    assignments: tuple[tuple[str, Fraction], ...] | None
    genericity_bound: int
    label: str
    value_override: tuple[tuple[str, RatFunc], ...] | None = None

    # -- values ---------------------------------------------------------

    def values(self) -> dict[str, RatFunc]:
        if self.value_override is not None:
            return dict(self.value_override)
        if self.mode == "symbolic":
            return dict(_GENS)
        point = dict(self.assignments or ())
        return {name: RatFunc.from_rational(point[name]) for name in PARAM_NAMES}

    def value(self, name: str) -> RatFunc:
        return self.values()[name]

    @property
    def is_symbolic(self) -> bool:
        return self.mode == "symbolic"

    def assignment_dict(self) -> dict[str, Fraction]:
        if self.assignments is None:
            raise MissingAssignment("symbolic parameters carry no assignment")
        return dict(self.assignments)

    # -- derived families -------------------------------------------------

    def shifted(self) -> "Params":
        """The same parameters with a -> qa and b -> qb (c, d, q fixed)."""
        if self.mode == "specialized" and self.value_override is None:
            point = self.assignment_dict()
            new_point = dict(point)
            new_point["a"] = point["q"] * point["a"]
            new_point["b"] = point["q"] * point["b"]
            shifted = make_params("specialized", new_point, self.genericity_bound)
            return dataclasses.replace(shifted, label=self.label + ";shift(a->qa,b->qb)")
        vals = self.values()
        new_vals = dict(vals)
        new_vals["a"] = vals["q"] * vals["a"]
        new_vals["b"] = vals["q"] * vals["b"]
        return Params(
            mode=self.mode,
            assignments=self.assignments,
            genericity_bound=self.genericity_bound,
            label=self.label + ";shift(a->qa,b->qb)",
            value_override=tuple(new_vals.items()),
        )

    def dual(self) -> "Params":
        """The dual family (s, ab/s, ac/s, ad/s) with s^2 = abcd/q.

        For the base symbolic parameters s is the formal extension symbol.
        For specialized parameters s must be an exact rational square root;
        otherwise the extension is unavailable and this raises
        :class:`ExtensionDisabled`.
        """
        vals = self.values()
        q, a, b, c, d = (vals[n] for n in PARAM_NAMES)
        t = a * b * c * d / q
        if t == RatFunc(_S_SQUARE):
            s_val = RatFunc.s()
        else:
            s_val = _ratfunc_sqrt(t)
            if s_val is None:
                raise ExtensionDisabled(
                    f"dual parameters need an exact square root of abcd/q, "
                    f"but {t} has none in the coefficient field"
                )
        new_vals = {
            "q": q,
            "a": s_val,
            "b": a * b / s_val,
            "c": a * c / s_val,
            "d": a * d / s_val,
        }
        try:
            point = {n: v.as_fraction() for n, v in new_vals.items()}
        except ValueError:
            pass  # generic values: admissible by genericity
        else:
            _check_admissible(point, self.genericity_bound)
        return Params(
            mode=self.mode,
            assignments=self.assignments,
            genericity_bound=self.genericity_bound,
            label=self.label + ";dual(s,ab/s,ac/s,ad/s)",
            value_override=tuple(new_vals.items()),
        )

    def __str__(self) -> str:
        return self.label


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = sympy.integer_nthroot(n, 2)
    return int(r[0]) if r[1] else None


def _ratfunc_sqrt(t: RatFunc) -> RatFunc | None:
    """Exact square root of an s-free scalar inside the field, or None."""
    if t.has_s() or t.is_zero():
        return None
    if t.g is not None:
        nroot = _isqrt_exact(int(t.g.numerator))
        droot = _isqrt_exact(int(t.g.denominator))
        if nroot is None or droot is None:
            return None
        return RatFunc.from_rational(Fraction(nroot, droot))
    root_parts = []
    for part in (t.r0.numer, t.r0.denom):
        content, factors = sympy.factor_list(part.as_expr())
        if not isinstance(content, sympy.Rational):
            return None
        croot_n = _isqrt_exact(content.p)
        croot_d = _isqrt_exact(content.q)
        if croot_n is None or croot_d is None:
            return None
        root = sympy.Rational(croot_n, croot_d)
        for base, exp in factors:
            if exp % 2:
                return None
            root *= base ** (exp // 2)
        root_parts.append(root)
    return RatFunc(_FIELD.from_expr(root_parts[0]) / _FIELD.from_expr(root_parts[1]))


def make_params(
    mode: str,
    assignments: Mapping[str, _Rational] | None = None,
    genericity_bound: int = 16,
) -> Params:
    """Validate and build a parameter set.

    Symbolic mode takes no assignments.  Specialized mode requires a value
    for each of q, a, b, c, d and enforces the genericity conditions:
    q != 0, q^m != 1 (1 <= m <= M), a,b,c,d != 0, abcd*q^m != 1
    (0 <= m <= M), and ab != 1, where M is ``genericity_bound``.
    """
    if genericity_bound < 1:
        raise ValueError("genericity_bound must be a positive integer")
    if mode == "symbolic":
        if assignments:
            raise ValueError("symbolic mode takes no assignments")
        return Params("symbolic", None, genericity_bound, "symbolic")
    if mode != "specialized":
        raise ValueError(f"unknown mode {mode!r}")
    if assignments is None:
        raise MissingAssignment("specialized mode needs assignments")
    missing = [n for n in PARAM_NAMES if n not in assignments]
    if missing:
        raise MissingAssignment(f"missing values for: {', '.join(missing)}")
    extra = [n for n in assignments if n not in PARAM_NAMES]
    if extra:
        raise ValueError(f"unknown parameter names: {', '.join(sorted(extra))}")
    point = {n: Fraction(assignments[n]) for n in PARAM_NAMES}
    _check_admissible(point, genericity_bound)
    label = ",".join(f"{n}={point[n]}" for n in PARAM_NAMES)
    return Params("specialized", tuple(point.items()), genericity_bound, label)


# ---------------------------------------------------------------------------
# Derived scalars


def elementary_symmetric(params: Params) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """The four elementary symmetric polynomials of a, b, c, d."""
    vals = params.values()
    a, b, c, d = (vals[n] for n in ("a", "b", "c", "d"))
    e1 = a + b + c + d
    e2 = a * b + a * c + a * d + b * c + b * d + c * d
    e3 = a * b * c + a * b * d + a * c * d + b * c * d
    e4 = a * b * c * d
    return (e1, e2, e3, e4)


@dataclass(frozen=True)
class StructureConstants:
    """All scalar constants of the two q-commutator relations, their central
    extension, and the Casimir scalar, for one parameter set."""

    e1: RatFunc
    e2: RatFunc
    e3: RatFunc
    e4: RatFunc
    B: RatFunc
    C0: RatFunc
    C1: RatFunc
    D0: RatFunc
    D1: RatFunc
    E: RatFunc
    F0: RatFunc
    F1: RatFunc
    G: RatFunc
    Q0: RatFunc


def structure_constants(params: Params) -> StructureConstants:
    """Compute every structure constant from the parameter values."""
    vals = params.values()
    q, a, b, c, d = (vals[n] for n in PARAM_NAMES)
    e1, e2, e3, e4 = elementary_symmetric(params)
    one = _ONE
    qi = q.inv()
    B = (one - qi) ** 2 * (e3 + q * e1)
    C0 = (q - qi) ** 2
    C1 = qi * (q - qi) ** 2 * e4
    D0 = -(qi**3) * (one - q) ** 2 * (one + q) * (e4 + q * e2 + q * q)
    D1 = -(qi**3) * (one - q) ** 2 * (one + q) * (e1 * e4 + q * e3)
    E = -(qi**2) * (one - q) ** 3 * (c + d)
    F0 = qi**3 * (one - q) ** 3 * (one + q) * (c * d + q)
    F1 = qi**3 * (one - q) ** 3 * (one + q) * (a + b) * c * d
    G = -(qi**4) * (one - q) ** 3 * (
        (a + b) * (c + d) * (c * d * (q * q + one) + q)
        - q * (a * b + one) * ((c * c + d * d) * (q + one) - c * d)
        + (c * d + e4) * (q * q + one)
        + (e2 + e4 - a * b) * q**3
    )
    Q0 = qi**4 * (one - q) ** 2 * (
        q**4 * (e4 - e2)
        + q**3 * (e1 * e1 - e1 * e3 - 2 * e2)
        - q * q * (e2 * e4 + 2 * e4 + e2)
        + q * (e3 * e3 - 2 * e2 * e4 - e1 * e3)
        + e4 * (one - e2)
    )
    return StructureConstants(e1, e2, e3, e4, B, C0, C1, D0, D1, E, F0, F1, G, Q0)


def eigenvalue(n: int, params: Params) -> RatFunc:
    """The n-th eigenvalue q^-n + abcd q^(n-1) of the q-difference operator."""
    if n < 0:
        raise ValueError("eigenvalue index must be nonnegative")
    vals = params.values()
    q = vals["q"]
    e4 = vals["a"] * vals["b"] * vals["c"] * vals["d"]
    return q ** (-n) + e4 * q ** (n - 1)


# ---------------------------------------------------------------------------
# Probabilistic identity testing


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))


def random_admissible_point(
    rng: random.Random, genericity_bound: int = 16
) -> dict[str, Fraction]:
    """Draw a random rational parameter point satisfying the genericity
    conditions (resampling on any violation)."""
    while True:
        point = {name: _random_fraction(rng) for name in PARAM_NAMES}
        try:
            _check_admissible(point, genericity_bound)
        except DegenerateParameters:
            continue
        return point


def prob_equal(
    x: RatFunc,
    y: RatFunc,
    rng: random.Random,
    trials: int = 8,
    genericity_bound: int = 16,
) -> bool:
    """Randomized equality screen: evaluate both scalars at random admissible
    points and compare exactly.  Disagreement proves inequality; agreement at
    every point makes equality overwhelmingly likely (each extra point
    multiplies the failure odds by roughly degree/|sample space|)."""
    for _ in range(trials):
        while True:
            point = random_admissible_point(rng, genericity_bound)
            try:
                vx = x.evaluate(point)
                vy = y.evaluate(point)
            except DivisionByZero:
                continue
            break
        if vx != vy:
            return False
    return True
