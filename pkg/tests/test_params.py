import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rank1daha.errors import (
    DegenerateParameters,
    DivisionByZero,
    ExtensionDisabled,
    MissingAssignment,
)
from rank1daha.params import (
    RatFunc,
    eigenvalue,
    elementary_symmetric,
    make_params,
    prob_equal,
    random_admissible_point,
    ratfunc_arith,
    structure_constants,
)

Q = RatFunc.gen("q")
A = RatFunc.gen("a")
B = RatFunc.gen("b")
C = RatFunc.gen("c")
D = RatFunc.gen("d")


# ---------------------------------------------------------------------------
# make_params and admissibility


def test_symbolic_params(sym):
    assert sym.is_symbolic
    assert str(sym.value("a")) == "a"


def test_specialized_valid():
    p = make_params(
        "specialized",
        {"q": Fraction(3, 2), "a": 2, "b": Fraction(1, 3), "c": 5, "d": 7},
    )
    assert not p.is_symbolic
    assert p.value("b").as_fraction() == Fraction(1, 3)


def test_q_equal_one_rejected():
    with pytest.raises(DegenerateParameters) as excinfo:
        make_params("specialized", {"q": 1, "a": 2, "b": 2, "c": 2, "d": 2})
    assert excinfo.value.m == 1


def test_q_root_of_unity_rejected():
    # q = -1 hits q^2 = 1
    with pytest.raises(DegenerateParameters) as excinfo:
        make_params("specialized", {"q": -1, "a": 2, "b": 3, "c": 5, "d": 7})
    assert excinfo.value.m == 2


def test_ab_equal_one_rejected():
    with pytest.raises(DegenerateParameters):
        make_params(
            "specialized",
            {"q": Fraction(3, 2), "a": 2, "b": Fraction(1, 2), "c": 5, "d": 7},
        )


def test_abcd_power_rejected():
    # abcd = 1 violates abcd*q^m != 1 at m = 0
    with pytest.raises(DegenerateParameters) as excinfo:
        make_params(
            "specialized",
            {"q": Fraction(3, 2), "a": 2, "b": 3, "c": 5, "d": Fraction(1, 30)},
        )
    assert excinfo.value.m == 0


def test_zero_parameter_rejected():
    with pytest.raises(DegenerateParameters):
        make_params("specialized", {"q": Fraction(3, 2), "a": 0, "b": 3, "c": 5, "d": 7})


def test_missing_assignment():
    with pytest.raises(MissingAssignment):
        make_params("specialized", {"q": Fraction(3, 2), "a": 2, "b": 3, "c": 5})
    with pytest.raises(MissingAssignment):
        make_params("specialized", None)


def test_symbolic_takes_no_assignments():
    with pytest.raises(ValueError):
        make_params("symbolic", {"q": 2, "a": 2, "b": 3, "c": 5, "d": 7})


# ---------------------------------------------------------------------------
# Scalar arithmetic


def test_mul_inverse_cancels():
    assert ratfunc_arith("mul", Q.inv(), Q) == RatFunc.one()


def test_p_over_p_minus_one_is_zero():
    p = A * A * B * Q - C
    assert ratfunc_arith("sub", p / p, RatFunc.one()).is_zero()


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ratfunc_arith("inv", RatFunc.zero())
    with pytest.raises(DivisionByZero):
        ratfunc_arith("div", Q, RatFunc.zero())


def test_canonical_form_is_stable():
    x = (A + B) * (A - B) / (Q * Q)
    y = (A * A - B * B) / (Q * Q)
    assert x == y
    assert hash(x) == hash(y)
    assert str(x) == str(y)


_small = st.integers(min_value=-4, max_value=4)
_atoms = [RatFunc.one(), Q, A, B, C * D, Q * A]


@st.composite
def ratfuncs(draw):
    coeffs = draw(st.lists(_small, min_size=1, max_size=4))
    val = RatFunc.zero()
    for i, c in enumerate(coeffs):
        val = val + _atoms[i % len(_atoms)] * c
    if draw(st.booleans()):
        val = val / (Q + 2)  # nonzero denominator keeps things rational
    return val


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if not x.is_zero():
        assert x * x.inv() == RatFunc.one()


def test_s_extension_square():
    s = RatFunc.s()
    assert (s * s - A * B * C * D / Q).is_zero()
    assert s.has_s() and not (s * s).has_s()


def test_prob_equal_agrees_with_exact():
    rng = random.Random(11)
    for i in range(100):
        x = (A + i) * (B - C) + Q
        hidden = (A * A - 1) / (A * A - 1)  # = 1 in canonical form
        same = x * hidden
        different = x + Fraction(1, i + 2)
        assert x == same
        assert prob_equal(x, same, rng, trials=4)
        assert not prob_equal(x, different, rng, trials=4)


def test_random_admissible_point_respects_constraints():
    rng = random.Random(5)
    for _ in range(20):
        pt = random_admissible_point(rng)
        assert pt["a"] * pt["b"] != 1
        assert pt["q"] not in (0, 1)
        # the sampled point must actually build
        make_params("specialized", pt)


# ---------------------------------------------------------------------------
# Derived scalars


def test_elementary_symmetric_symbolic(sym):
    e1, e2, e3, e4 = elementary_symmetric(sym)
    assert e4 == A * B * C * D
    assert e1 == A + B + C + D


def test_elementary_symmetric_at_unit_point(sym):
    # a=b=c=d=1 is outside the admissible region (ab = 1), so evaluate the
    # symbolic polynomials at that point instead of building Params there.
    point = {"q": Fraction(2), "a": 1, "b": 1, "c": 1, "d": 1}
    values = [e.subs(point).as_fraction() for e in elementary_symmetric(sym)]
    assert values == [4, 6, 4, 1]


def test_elementary_symmetric_2357(gpoint):
    values = [e.as_fraction() for e in elementary_symmetric(gpoint)]
    assert values == [17, 101, 247, 210]


def test_structure_constants_c0(sym):
    sc = structure_constants(sym)
    assert sc.C0 == (Q - Q.inv()) ** 2
    pq2 = make_params("specialized", {"q": 2, "a": 2, "b": 3, "c": 5, "d": 7})
    assert structure_constants(pq2).C0.as_fraction() == Fraction(9, 4)


def test_structure_constants_are_symmetric_in_cd(sym):
    # swapping c and d fixes every constant of the two-generator relations
    sc = structure_constants(sym)
    pt = {"q": Fraction(3, 2), "a": 2, "b": 3, "c": 5, "d": 7}
    pt_swapped = {"q": Fraction(3, 2), "a": 2, "b": 3, "c": 7, "d": 5}
    for name in ("B", "C0", "C1", "D0", "D1", "Q0"):
        val = getattr(sc, name)
        assert val.evaluate(pt) == val.evaluate(pt_swapped)


def test_eigenvalues(sym):
    assert eigenvalue(0, sym) == RatFunc.one() + A * B * C * D / Q
    assert eigenvalue(1, sym) == Q.inv() + A * B * C * D
    with pytest.raises(ValueError):
        eigenvalue(-1, sym)


def test_eigenvalues_distinct(gpoint):
    values = [eigenvalue(n, gpoint).as_fraction() for n in range(21)]
    assert len(set(values)) == 21


# ---------------------------------------------------------------------------
# Parameter transforms


def test_shifted_params(sym):
    sh = sym.shifted()
    assert sh.value("a") == Q * A
    assert sh.value("b") == Q * B
    assert sh.value("c") == C


def test_dual_params_symbolic_involution(sym):
    dual = sym.dual()
    s = RatFunc.s()
    assert dual.value("a") == s
    assert dual.value("b") == A * B / s
    back = dual.dual()
    for name in ("q", "a", "b", "c", "d"):
        assert back.value(name) == sym.value(name)


def test_dual_params_rational_point(spoint):
    dual = spoint.dual()
    assert dual.value("a").as_fraction() == 2  # s = sqrt(abcd/q) = 2
    assert dual.value("b").as_fraction() == Fraction(15, 2)
    back = dual.dual()
    for name in ("q", "a", "b", "c", "d"):
        assert back.value(name) == spoint.value(name)


def test_dual_needs_exact_square_root(gpoint):
    # abcd/q = 140 has no rational square root
    with pytest.raises(ExtensionDisabled):
        gpoint.dual()
