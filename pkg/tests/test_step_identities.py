"""The catalog of compression identities behind the two isomorphisms.

Every entry states that a short word in the embedded AW generators, cut
down by a right factor T1+1 (symmetric family) or T1+ab (antisymmetric
family), equals its listed leading Laurent terms plus a dominated rest.
The checker returns the residual and a verdict, so the tests can pin
literal leading coefficients as well as sweep the whole table.
"""

import pytest

from rank1daha.errors import UnknownIdentity
from rank1daha.ncalg import STEP_IDENTITIES, check_step_identity


def u_of(params):
    v = params.values()
    return v["a"] * v["b"] * v["c"] * v["d"] / v["q"]


# ---------------------------------------------------------------------------
# Full sweep at a generic rational point


def test_all_identities_hold_for_small_exponents(gpoint):
    for name in sorted(STEP_IDENTITIES):
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                residual, ok = check_step_identity(name, m, n, gpoint)
                assert ok, f"{name} fails at (m, n) = ({m}, {n})"


def test_one_index_identities_ignore_the_other_exponent(gpoint):
    # "44" depends on m only: the residual must not change with n
    r1, _ = check_step_identity("44", 2, 1, gpoint)
    r2, _ = check_step_identity("44", 2, 3, gpoint)
    assert r1 == r2


# ---------------------------------------------------------------------------
# Symbolic spot checks, including the two pinned leading-term patterns


@pytest.mark.parametrize("name", ["44", "49", "56", "a44", "a49", "sph3.1", "asph3.2"])
def test_symbolic_samples(sym, name):
    residual, ok = check_step_identity(name, 1, 1, sym)
    assert ok
    residual, ok = check_step_identity(name, 2, 2, sym)
    assert ok


def test_mixed_power_leading_terms(sym):
    v = sym.values()
    ab = v["a"] * v["b"]
    u = u_of(sym)
    spec = STEP_IDENTITIES["49"]
    assert spec.leading(1, 1, sym) == {(1, 1): 1, (-1, -1): -ab * u}


def test_sandwiched_product_leading_terms(sym):
    # K1 (K0 K1) K0 with both exponents 2: four corners, top weight q
    v = sym.values()
    q, ab, u = v["q"], v["a"] * v["b"], u_of(sym)
    spec = STEP_IDENTITIES["56"]
    expected = {
        (2, 2): q,
        (-2, 2): q.inv(),
        (2, -2): q.inv() * u**2,
        (-2, -2): q.inv() * u**2 * (1 + ab - q * q * ab),
    }
    assert spec.leading(2, 2, sym) == expected


def test_exact_compressions_have_zero_residual(sym):
    for name in ("44.exact", "45.exact"):
        residual, ok = check_step_identity(name, 1, 1, sym)
        assert ok
        assert residual.is_zero()


# ---------------------------------------------------------------------------
# Input validation


def test_unknown_identity_rejected(gpoint):
    with pytest.raises(UnknownIdentity):
        check_step_identity("46", 1, 1, gpoint)


def test_nonpositive_exponents_rejected(gpoint):
    with pytest.raises(ValueError):
        check_step_identity("44", 0, 1, gpoint)
    with pytest.raises(ValueError):
        check_step_identity("49", 2, -1, gpoint)
