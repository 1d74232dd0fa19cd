"""The basic representation on symmetric Laurent polynomials.

K1 acts by multiplication by z + z^-1 and K0 by the second-order
q-difference operator

    (D f)[z] = A[z] (f[qz] - f[z]) + A[1/z] (f[z/q] - f[z])
               + (1 + abcd/q) f[z],
    A[z] = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-qz^2)),

whose eigenfunctions are the monic Askey-Wilson polynomials P_n with
eigenvalues lambda_n = q^-n + abcd q^(n-1).  The operator is evaluated
with exact rational-function coefficients over a common denominator and
the final division is checked to be remainder-free, so a nonzero
denominator residue signals an arithmetic bug rather than rounding.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateParameters,
    InternalDenominatorResidue,
    NotSymmetric,
)
from .params import Params, RatFunc, eigenvalue, structure_constants

__all__ = [
    "LaurentPoly",
    "apply_dsym",
    "apply_k1",
    "apply_word",
    "qpochhammer",
    "askey_wilson",
    "shifted_qn",
    "recurrence_coeffs",
    "casimir_apply",
    "check_aw_relations_in_rep",
]

_ONE = RatFunc.one()
_ZERO = RatFunc.zero()


class LaurentPoly:
    """A Laurent polynomial in z with rational-function coefficients,
    stored sparsely as exponent -> coefficient (no zero entries)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, RatFunc]):
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: _ONE})

    @staticmethod
    def monomial(k: int, coef: RatFunc = _ONE) -> "LaurentPoly":
        return LaurentPoly({k: coef})

    @staticmethod
    def symmetric_basis(k: int) -> "LaurentPoly":
        """z^k + z^-k for k >= 1; the constant 1 for k = 0."""
        if k == 0:
            return LaurentPoly.one()
        return LaurentPoly({k: _ONE, -k: _ONE})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_symmetric(self) -> bool:
        return all(
            self.coeffs.get(-k, _ZERO) == c for k, c in self.coeffs.items()
        )

    def coeff(self, k: int) -> RatFunc:
        return self.coeffs.get(k, _ZERO)

    def degree(self) -> int:
        """Largest |k| with a nonzero coefficient (0 for the zero polynomial)."""
        return max((abs(k) for k in self.coeffs), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            new = out.get(k, _ZERO) + c
            if new.is_zero():
                out.pop(k, None)
            else:
                out[k] = new
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, coef: RatFunc) -> "LaurentPoly":
        return LaurentPoly({k: coef * c for k, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, RatFunc] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                new = out.get(k, _ZERO) + c1 * c2
                if new.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = new
        return LaurentPoly(out)

    def dilate(self, q: RatFunc, power: int) -> "LaurentPoly":
        """f[z] -> f[q^power z]: multiplies the z^k coefficient by q^(power*k)."""
        return LaurentPoly({k: c * q ** (power * k) for k, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            shown = str(self.coeffs[k])
            if " " in shown:
                shown = f"({shown})"
            parts.append(f"{shown}*z^{k}" if k else shown)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials; raises if a remainder is left."""
    if num.is_zero():
        return LaurentPoly.zero()
    den_top = max(den.coeffs)
    den_lead = den.coeffs[den_top]
    lead_inv = den_lead.inv()
    rem = dict(num.coeffs)
    quot: dict[int, RatFunc] = {}
    while rem:
        top = max(rem)
        if top - den_top < min(rem) - min(den.coeffs):
            raise InternalDenominatorResidue(
                "difference-operator output failed to clear its denominator"
            )
        shift = top - den_top
        factor = rem[top] * lead_inv
        quot[shift] = factor
        for k, c in den.coeffs.items():
            kk = k + shift
            new = rem.get(kk, _ZERO) - factor * c
            if new.is_zero():
                rem.pop(kk, None)
            else:
                rem[kk] = new
    return LaurentPoly(quot)


def _require_symmetric(f: LaurentPoly) -> None:
    if not f.is_symmetric():
        raise NotSymmetric("operator input must satisfy coeff(k) = coeff(-k)")


def apply_dsym(f: LaurentPoly, params: Params) -> LaurentPoly:
    """The second-order q-difference operator on a symmetric Laurent
    polynomial, computed exactly."""
    _require_symmetric(f)
    vals = params.values()
    q, a, b, c, d = (vals[k] for k in ("q", "a", "b", "c", "d"))
    lam0 = _ONE + a * b * c * d / q
    z = LaurentPoly.monomial(1)
    z2 = LaurentPoly.monomial(2)
    one = LaurentPoly.one()

    def lin(coef: RatFunc) -> LaurentPoly:
        # 1 - coef*z
        return one - LaurentPoly.monomial(1, coef)

    # numerators of the two coefficient functions
    num_plus = lin(a) * lin(b) * lin(c) * lin(d)
    num_minus = (
        (LaurentPoly.monomial(0, a) - z)
        * (LaurentPoly.monomial(0, b) - z)
        * (LaurentPoly.monomial(0, c) - z)
        * (LaurentPoly.monomial(0, d) - z)
    )
    den_plus = (one - z2) * (one - z2.scale(q))  # (1-z^2)(1-qz^2)
    den_minus = (one - z2) * (LaurentPoly.monomial(0, q) - z2)  # (1-z^2)(q-z^2)

    diff_plus = f.dilate(q, 1) - f
    diff_minus = f.dilate(q, -1) - f

    # common denominator (1-z^2)(1-qz^2)(q-z^2)
    common = den_plus * (LaurentPoly.monomial(0, q) - z2)
    numerator = (
        num_plus * (LaurentPoly.monomial(0, q) - z2) * diff_plus
        + num_minus * (one - z2.scale(q)) * diff_minus
        + (common * f).scale(lam0)
    )
    result = _divide_exact(numerator, common)
    if not result.is_symmetric():
        raise InternalDenominatorResidue(
            "difference-operator output lost symmetry"
        )
    return result


def apply_k1(f: LaurentPoly) -> LaurentPoly:
    """Multiplication by z + z^-1."""
    out: dict[int, RatFunc] = {}
    for k, c in f.coeffs.items():
        for kk in (k + 1, k - 1):
            new = out.get(kk, _ZERO) + c
            if new.is_zero():
                out.pop(kk, None)
            else:
                out[kk] = new
    return LaurentPoly(out)


def apply_word(
    word: Sequence[str], f: LaurentPoly, params: Params
) -> LaurentPoly:
    """Apply a word over {K0, K1} as a composition of operators, the
    rightmost letter acting first."""
    _require_symmetric(f)
    out = f
    for letter in reversed(tuple(word)):
        if letter == "K0":
            out = apply_dsym(out, params)
        elif letter == "K1":
            out = apply_k1(out)
        else:
            raise ValueError(f"operator words use K0/K1 letters, got {letter!r}")
    return out


def qpochhammer(x: RatFunc, n: int, params: Params) -> RatFunc:
    """The q-shifted factorial (x; q)_n = prod_{j<n} (1 - x q^j)."""
    if n < 0:
        raise ValueError("q-shifted factorials take nonnegative length")
    q = params.value("q")
    out = _ONE
    power = _ONE
    for _ in range(n):
        out = out * (_ONE - x * power)
        power = power * q
    return out


def askey_wilson(n: int, params: Params) -> LaurentPoly:
    """The monic Askey-Wilson polynomial P_n as a symmetric Laurent
    polynomial.

    Built from the terminating basic hypergeometric sum

      p_n = a^-n (ab,ac,ad;q)_n
            sum_k  [(q^-n;q)_k (abcd q^(n-1);q)_k (az;q)_k (a/z;q)_k
                    / ((ab;q)_k (ac;q)_k (ad;q)_k (q;q)_k)] q^k,

    with the prefactor folded into each summand so that no division by
    (ab;q)_k etc. ever occurs, then normalized by (abcd q^(n-1);q)_n.
    """
    if n < 0:
        raise ValueError("polynomial degree must be nonnegative")
    vals = params.values()
    q, a, b, c, d = (vals[k] for k in ("q", "a", "b", "c", "d"))
    abcd = a * b * c * d
    qn = q**n

    divisor = qpochhammer(abcd * q ** (n - 1), n, params)
    if divisor.is_zero():
        raise DegenerateParameters("abcd*q^m = 1", m=None)

    total = LaurentPoly.zero()
    one = LaurentPoly.one()
    for k in range(n + 1):
        # scalar part:  (q^-n;q)_k (abcd q^(n-1);q)_k q^k / (q;q)_k
        #             * (ab q^k;q)_(n-k) (ac q^k;q)_(n-k) (ad q^k;q)_(n-k)
        scal = (
            qpochhammer(qn.inv(), k, params)
            * qpochhammer(abcd * q ** (n - 1), k, params)
            * q**k
            / qpochhammer(q, k, params)
        )
        for x in (a * b, a * c, a * d):
            scal = scal * qpochhammer(x * q**k, n - k, params)
        # Laurent part: (az;q)_k (a z^-1;q)_k
        #   = prod_{j<k} (1 - a q^j (z + z^-1) + a^2 q^(2j))
        lau = one
        for j in range(k):
            aqj = a * q**j
            lau = lau * LaurentPoly(
                {0: _ONE + aqj * aqj, 1: -aqj, -1: -aqj}
            )
        total = total + lau.scale(scal)
    return total.scale(a ** (-n) / divisor)


def shifted_qn(n: int, params: Params) -> LaurentPoly:
    """The shifted family Q_n = (ab)^-1 z^-1 (1-az)(1-bz) P_(n-1) at
    parameters (qa, qb, c, d); Q_0 = 0 by the convention P_(-1) = 0."""
    if n < 0:
        raise ValueError("the shifted family is indexed by n >= 0")
    if n == 0:
        return LaurentPoly.zero()
    vals = params.values()
    a, b = vals["a"], vals["b"]
    p_shift = askey_wilson(n - 1, params.shifted())
    prefactor = LaurentPoly(
        {1: _ONE, 0: -(a + b) / (a * b), -1: (a * b).inv()}
    )
    return prefactor * p_shift


def recurrence_coeffs(n: int, params: Params) -> tuple[RatFunc, RatFunc]:
    """The three-term recurrence coefficients beta_n, gamma_n with
    (z + z^-1) P_n = P_(n+1) + beta_n P_n + gamma_n P_(n-1), recovered by
    triangular projection onto the monic family (gamma_0 = 0)."""
    if n < 0:
        raise ValueError("recurrence index must be nonnegative")
    p_n = askey_wilson(n, params)
    p_up = askey_wilson(n + 1, params)
    rest = apply_k1(p_n) - p_up
    beta = rest.coeff(n)
    rest = rest - p_n.scale(beta)
    if n == 0:
        gamma = _ZERO
    else:
        gamma = rest.coeff(n - 1)
        rest = rest - askey_wilson(n - 1, params).scale(gamma)
    if not rest.is_zero():
        raise AssertionError(
            "three-term projection left a residual; the monic family is broken"
        )
    return beta, gamma


def _casimir_word_combination(params: Params) -> list[tuple[RatFunc, tuple[str, ...]]]:
    sc = structure_constants(params)
    q = params.value("q")
    qpqi = q + q.inv()
    cmid = q * q + _ONE + (q * q).inv()
    clin = q + _ONE + q.inv()
    return [
        (_ONE, ("K1", "K0", "K1", "K0")),
        (-cmid, ("K0", "K1", "K0", "K1")),
        (qpqi, ("K0", "K0", "K1", "K1")),
        (qpqi * sc.C0, ("K0", "K0")),
        (qpqi * sc.C1, ("K1", "K1")),
        (sc.B * clin, ("K0", "K1")),
        (sc.B, ("K1", "K0")),
        (clin * sc.D0, ("K0",)),
        (clin * sc.D1, ("K1",)),
    ]


def casimir_apply(f: LaurentPoly, params: Params) -> LaurentPoly:
    """Apply the degree-four Casimir word combination; on every symmetric
    Laurent polynomial the result is the scalar Q0 times the input."""
    _require_symmetric(f)
    out = LaurentPoly.zero()
    for coef, word in _casimir_word_combination(params):
        out = out + apply_word(word, f, params).scale(coef)
    return out


def check_aw_relations_in_rep(
    max_degree: int,
    params: Params,
    perturb_B: RatFunc | None = None,
) -> list[LaurentPoly]:
    """Residuals of the two q-commutator operator relations on the
    symmetric spanning set z^k + z^-k, k = 0..max_degree.

    All residuals are zero for the true structure constants;
    ``perturb_B`` shifts the constant B (negative control)."""
    sc = structure_constants(params)
    q = params.value("q")
    qpqi = q + q.inv()
    b_used = sc.B + perturb_B if perturb_B is not None else sc.B
    residuals = []
    for k in range(max_degree + 1):
        f = LaurentPoly.symmetric_basis(k)
        rel1 = (
            apply_word(("K1", "K0", "K1"), f, params).scale(qpqi)
            - apply_word(("K1", "K1", "K0"), f, params)
            - apply_word(("K0", "K1", "K1"), f, params)
            - apply_k1(f).scale(b_used)
            - apply_dsym(f, params).scale(sc.C0)
            - f.scale(sc.D0)
        )
        rel2 = (
            apply_word(("K0", "K1", "K0"), f, params).scale(qpqi)
            - apply_word(("K0", "K0", "K1"), f, params)
            - apply_word(("K1", "K0", "K0"), f, params)
            - apply_dsym(f, params).scale(b_used)
            - apply_k1(f).scale(sc.C1)
            - f.scale(sc.D1)
        )
        residuals.append(rel1)
        residuals.append(rel2)
    return residuals
