"""Named identity checks, configuration, reports, and expression parsing.

Every mechanically verifiable identity of the kernel is registered here
under a stable id.  A check receives a parameter set and reports pass or
fail with the first offending residual; :func:`run_checks` drives a
selected subset in either exact mode (one run, usually symbolic) or
probabilistic mode (several runs at seeded random admissible rational
points, each run exact).  Reports serialize deterministically for a
fixed seed, elapsed times aside.
"""

from __future__ import annotations

import dataclasses
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import ncalg, polyrep
from .errors import ConfigError, DegenerateParameters, KernelError, ParseError
from .ncalg import Element, NormalForm
from .params import (
    PARAM_NAMES,
    Params,
    RatFunc,
    eigenvalue,
    make_params,
    random_admissible_point,
    structure_constants,
)

__all__ = [
    "TOOL_VERSION",
    "CheckSpec",
    "CheckResult",
    "Report",
    "RunConfig",
    "CHECK_CATALOG",
    "check_ids",
    "run_checks",
    "parse_expression",
    "emit_report",
    "load_report",
    "render_text",
    "parse_config_file",
    "parse_param_assignments",
]

TOOL_VERSION = "0.1.0"

_ONE = RatFunc.one()


@dataclass(frozen=True)
class CheckSpec:
    """One catalog entry: a stable id, the knob bounds it reads, and its
    default mode when the run does not force one."""

    id: str
    statement: str
    default_mode: str  # "exact" | "prob"
    runner: Callable  # (params, bounds, rng) -> str ("" = pass, else summary)


@dataclass
class CheckResult:
    id: str
    verdict: str  # "pass" | "fail" | "error"
    residual_summary: str
    trials: int
    elapsed_ms: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "verdict": self.verdict,
            "residual_summary": self.residual_summary,
            "trials": self.trials,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class Report:
    tool_version: str
    params_echo: str
    seed: int
    results: list[CheckResult]
    overall: str  # "pass" | "fail"

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "params_echo": self.params_echo,
            "seed": self.seed,
            "results": [r.to_dict() for r in self.results],
            "overall": self.overall,
        }


@dataclass
class RunConfig:
    checks: Sequence[str] | None = None  # None or empty = all
    mode: str | None = None  # None = per-check default, else "exact"|"prob"
    seed: int = 1729
    trials: int = 8
    max_mn: int = 3
    max_degree: int = 6
    max_n: int = 8
    params: Params | None = None  # None = symbolic


# ---------------------------------------------------------------------------
# Check implementations.  Each returns "" on success or a short summary of
# the first failure.  They raise only for genuinely broken configuration;
# mathematical failure is reported, not raised.


def _fmt_nf(nf: NormalForm, limit: int = 4) -> str:
    lines = str(nf).splitlines()
    shown = "; ".join(lines[:limit])
    if len(lines) > limit:
        shown += f"; ... ({len(lines)} terms)"
    return shown


def _fmt_poly(f: polyrep.LaurentPoly) -> str:
    text = str(f)
    return text if len(text) <= 200 else text[:200] + " ..."


def _check_relations_daha(params, bounds, rng) -> str:
    # construction already validates that right sides are canonically
    # ordered; reducing each relation exercises the rules themselves
    system = ncalg.rewrite_system(params)
    for name, rel in system.defining_relations():
        nf = ncalg.reduce(rel, params)
        if not nf.is_zero():
            return f"relation {name}: {_fmt_nf(nf)}"
    return ""


def _check_confluence_spot(params, bounds, rng) -> str:
    letters = list(ncalg.DAHA_ALPHABET)
    for _ in range(20):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(2, 6)))
        e = Element("daha", {word: _ONE})
        left = ncalg.reduce(e, params, strategy="leftmost")
        right = ncalg.reduce(e, params, strategy="rightmost")
        if left != right:
            return f"strategies disagree on {' '.join(word)}"
        again = ncalg.reduce(left.as_element(), params)
        if again != left:
            return f"reduction not idempotent on {' '.join(word)}"
    return ""


def _aw_relation_elements(params) -> dict[str, Element]:
    """The defining relations of the central extension, as elements whose
    embeddings must reduce to zero."""
    sc = structure_constants(params)
    vals = params.values()
    q = vals["q"]
    ab = vals["a"] * vals["b"]
    K0 = Element.generator("K0")
    K1 = Element.generator("K1")
    T1 = Element.generator("T1", "aw")
    one = Element.one("aw")
    qpqi = q + q.inv()
    tfac = T1 + ab
    rel34 = (
        (K1 * K0 * K1).scale(qpqi)
        - K1 * K1 * K0
        - K0 * K1 * K1
        - K1.scale(sc.B)
        - K0.scale(sc.C0)
        - one.scale(sc.D0)
        - (K1 * tfac).scale(sc.E)
        - tfac.scale(sc.F0)
    )
    rel35 = (
        (K0 * K1 * K0).scale(qpqi)
        - K0 * K0 * K1
        - K1 * K0 * K0
        - K0.scale(sc.B)
        - K1.scale(sc.C1)
        - one.scale(sc.D1)
        - (K0 * tfac).scale(sc.E)
        - tfac.scale(sc.F1)
    )
    cmid = q * q + _ONE + (q * q).inv()
    clin = q + _ONE + q.inv()
    rel36 = (
        (K1 * K0) * (K1 * K0)
        - (K0 * (K1 * K0) * K1).scale(cmid)
        + (K0 * K0 * K1 * K1).scale(qpqi)
        + (K0 * K0).scale(qpqi * sc.C0)
        + (K1 * K1).scale(qpqi * sc.C1)
        + ((K0 * K1).scale(clin) + K1 * K0) * (one.scale(sc.B) + tfac.scale(sc.E))
        + K0.scale(clin) * (one.scale(sc.D0) + tfac.scale(sc.F0))
        + K1.scale(clin) * (one.scale(sc.D1) + tfac.scale(sc.F1))
        + tfac.scale(sc.G)
        - one.scale(sc.Q0)
    )
    return {
        "rel34": rel34,
        "rel35": rel35,
        "rel36": rel36,
        "central0": K0 * T1 - T1 * K0,
        "central1": K1 * T1 - T1 * K1,
        "quad": (T1 + ab) * (T1 + _ONE),
    }


def _plain_aw_relation_elements(params) -> dict[str, Element]:
    """The two q-commutator relations and the Casimir relation of the
    two-generator quotient (these hold only modulo the T1 = -ab ideal)."""
    sc = structure_constants(params)
    q = params.value("q")
    K0 = Element.generator("K0")
    K1 = Element.generator("K1")
    one = Element.one("aw")
    qpqi = q + q.inv()
    rel1 = (
        (K1 * K0 * K1).scale(qpqi)
        - K1 * K1 * K0
        - K0 * K1 * K1
        - K1.scale(sc.B)
        - K0.scale(sc.C0)
        - one.scale(sc.D0)
    )
    rel2 = (
        (K0 * K1 * K0).scale(qpqi)
        - K0 * K0 * K1
        - K1 * K0 * K0
        - K0.scale(sc.B)
        - K1.scale(sc.C1)
        - one.scale(sc.D1)
    )
    return {"rel1": rel1, "rel2": rel2, "casimir": _casimir_element(params) - one.scale(sc.Q0)}


def _casimir_element(params) -> Element:
    """The degree-four central word combination over K0/K1."""
    K0 = Element.generator("K0")
    K1 = Element.generator("K1")
    words = {"K0": K0, "K1": K1}
    out = Element.zero("aw")
    for coef, word in polyrep._casimir_word_combination(params):
        prod = Element.one("aw")
        for letter in word:
            prod = prod * words[letter]
        out = out + prod.scale(coef)
    return out


def _embed_check(name: str):
    def run(params, bounds, rng) -> str:
        rel = _aw_relation_elements(params)[name]
        nf = ncalg.embed_aw(rel, params)
        return "" if nf.is_zero() else _fmt_nf(nf)

    return run


def _check_t1central(params, bounds, rng) -> str:
    rels = _aw_relation_elements(params)
    for name in ("central0", "central1"):
        nf = ncalg.embed_aw(rels[name], params)
        if not nf.is_zero():
            return f"{name}: {_fmt_nf(nf)}"
    return ""


def _check_idempotents(params, bounds, rng) -> str:
    p_sym, p_asym = ncalg.idempotents(params)
    one = Element.one("daha")
    cases = {
        "sym idempotent": p_sym * p_sym - p_sym,
        "asym idempotent": p_asym * p_asym - p_asym,
        "sum to one": p_sym + p_asym - one,
        "orthogonal": p_sym * p_asym,
        "T1 quadratic": _quad_element(params),
    }
    for name, e in cases.items():
        nf = ncalg.reduce(e, params)
        if not nf.is_zero():
            return f"{name}: {_fmt_nf(nf)}"
    return ""


def _quad_element(params) -> Element:
    vals = params.values()
    ab = vals["a"] * vals["b"]
    T1 = Element.generator("T1", "daha")
    return (T1 + ab) * (T1 + _ONE)


def _random_daha_word(rng, max_len=3) -> Element:
    letters = list(ncalg.DAHA_ALPHABET)
    word = tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len)))
    return Element("daha", {word: _ONE})


def _check_spherical_mult(params, bounds, rng) -> str:
    # S(U) S(V) = S(U P_sym V) for the two-sided compression S
    p_sym, _ = ncalg.idempotents(params)
    for _ in range(8):
        u = _random_daha_word(rng)
        v = _random_daha_word(rng)
        left = ncalg.multiply(
            ncalg.spherical(u, params), ncalg.spherical(v, params), params
        )
        right = ncalg.spherical(u * p_sym * v, params)
        if left != right:
            return f"compression not multiplicative on {u} | {v}"
    # on the embedded (T1-commuting) subalgebra, S(U) = U P_sym
    for word in (("K0",), ("K1",), ("K0", "K1")):
        u = ncalg.embed_element(Element("aw", {word: _ONE}), params)
        left = ncalg.spherical(u, params)
        right = ncalg.reduce(u * p_sym, params)
        if left != right:
            return f"S(U) != U P_sym for embedded {' '.join(word)}"
    return ""


def _k_words_up_to(total: int) -> list[tuple[str, ...]]:
    words: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(total):
        frontier = [w + (g,) for w in frontier for g in ("K0", "K1")]
        words.extend(frontier)
    return words


def _check_iso_mult(which: str):
    iso = ncalg.iso_spherical if which == "sym" else ncalg.iso_antispherical

    def run(params, bounds, rng) -> str:
        words = _k_words_up_to(2)  # pairs with total length <= 4
        images = {w: iso(Element("aw", {w: _ONE}), params) for w in words}
        for w1 in words:
            for w2 in words:
                left = ncalg.multiply(images[w1], images[w2], params)
                right = iso(Element("aw", {w1 + w2: _ONE}), params)
                if left != right:
                    return (
                        f"not multiplicative on {' '.join(w1) or '1'} | "
                        f"{' '.join(w2) or '1'}"
                    )
        return ""

    return run


def _check_step(identity: str):
    def run(params, bounds, rng) -> str:
        spec = ncalg.STEP_IDENTITIES[identity]
        bound = bounds.get("max_mn", 3)
        if spec.uses == "m":
            pairs = [(m, 1) for m in range(1, bound + 1)]
        elif spec.uses == "n":
            pairs = [(1, n) for n in range(1, bound + 1)]
        else:
            pairs = [(m, n) for m in range(1, bound + 1) for n in range(1, bound + 1)]
        for m, n in pairs:
            residual, ok = ncalg.check_step_identity(identity, m, n, params)
            if not ok:
                return f"(m,n)=({m},{n}): {_fmt_nf(residual)}"
        return ""

    return run


def _check_step_group(identities: Sequence[str]):
    def run(params, bounds, rng) -> str:
        bound = bounds.get("max_mn", 3)
        for identity in identities:
            for m in range(1, bound + 1):
                for n in range(1, bound + 1):
                    residual, ok = ncalg.check_step_identity(identity, m, n, params)
                    if not ok:
                        return f"{identity} (m,n)=({m},{n}): {_fmt_nf(residual)}"
        return ""

    return run


def _check_o_filtration(params, bounds, rng) -> str:
    # semantic self-test of the dominance predicate
    ab = params.values()["a"] * params.values()["b"]
    inside = NormalForm({(1, 0, 0): _ONE, (0, 1, 0): ab, (-1, -1, 0): _ONE})
    edge = NormalForm({(2, 1, 0): _ONE})
    corner = NormalForm({(2, 2, 0): _ONE})
    t1_term = NormalForm({(1, 1, 1): _ONE})
    cases = [
        (ncalg.is_o_of(inside, 2, 2), True, "interior points accepted"),
        (ncalg.is_o_of(edge, 2, 2), True, "edge (|k|,|l|)!=(|m|,|n|) accepted"),
        (ncalg.is_o_of(corner, 2, 2), False, "corner rejected"),
        (ncalg.is_o_of(corner, 3, 3), True, "corner inside larger box accepted"),
        (ncalg.is_o_of(t1_term, 2, 2, "plain"), False, "plain mode rejects T1"),
        (
            ncalg.is_o_of(t1_term, 2, 2, "times_T1_factor"),
            True,
            "layered mode accepts dominated T1 term",
        ),
        (ncalg.is_o_of(NormalForm({}), 1, 1), True, "zero accepted"),
    ]
    for got, want, label in cases:
        if got != want:
            return f"dominance predicate wrong: {label}"
    return ""


def _check_duality_aw(params, bounds, rng) -> str:
    target = params.dual()
    # relations of the central extension map to exact zero
    for name, rel in _aw_relation_elements(params).items():
        img, tgt = ncalg.duality_image(rel, "AW", params)
        nf = ncalg.embed_aw(img, tgt)
        if not nf.is_zero():
            return f"{name} image: {_fmt_nf(nf)}"
    # quotient relations map to zero modulo the T1 = -ab ideal
    killer = Element("daha", {("T1",): _ONE, (): _ONE})
    for name, rel in _plain_aw_relation_elements(params).items():
        img, tgt = ncalg.duality_image(rel, "AW", params)
        nf = ncalg.reduce(ncalg.embed_element(img, tgt) * killer, tgt)
        if not nf.is_zero():
            return f"{name} image (mod ideal): {_fmt_nf(nf)}"
    # the Casimir scalar transforms by qa/(bcd) ...
    vals = params.values()
    factor = vals["q"] * vals["a"] / (vals["b"] * vals["c"] * vals["d"])
    if structure_constants(target).Q0 != factor * structure_constants(params).Q0:
        return "dual Casimir scalar is not qa/(bcd) times the source scalar"
    # ... while the Casimir word expression transforms by the reciprocal
    q_img, tgt = ncalg.duality_image(_casimir_element(params), "AW", params)
    q_dual = _casimir_element(target)
    diff = ncalg.embed_aw(q_img, tgt) - ncalg.embed_aw(q_dual, tgt).scale(
        factor.inv()
    )
    if not diff.is_zero():
        return f"Casimir expression scaling failed: {_fmt_nf(diff)}"
    # anti-multiplicativity on random word pairs
    letters = ["K0", "K1", "T1"]
    for _ in range(20):
        w1 = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        w2 = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        u = Element("aw", {w1: _ONE})
        v = Element("aw", {w2: _ONE})
        uv_img, _ = ncalg.duality_image(u * v, "AW", params)
        u_img, _ = ncalg.duality_image(u, "AW", params)
        v_img, _ = ncalg.duality_image(v, "AW", params)
        lhs = ncalg.embed_aw(uv_img, target)
        rhs = ncalg.multiply(
            ncalg.embed_aw(v_img, target), ncalg.embed_aw(u_img, target), target
        )
        if lhs != rhs:
            return f"not anti-multiplicative on {' '.join(w1)} | {' '.join(w2)}"
    return ""


def _check_duality_daha(params, bounds, rng) -> str:
    target = params.dual()
    system = ncalg.rewrite_system(params)
    for name, rel in system.defining_relations():
        img, tgt = ncalg.duality_image(rel, "DAHA", params)
        nf = ncalg.reduce(img, tgt)
        if not nf.is_zero():
            return f"relation {name} image: {_fmt_nf(nf)}"
    # involution on parameter values
    double = target.dual()
    for name in PARAM_NAMES:
        if double.value(name) != params.value(name):
            return f"dual of dual moved parameter {name}"
    # anti-multiplicativity on random word pairs
    for _ in range(20):
        u = _random_daha_word(rng)
        v = _random_daha_word(rng)
        uv_img, _ = ncalg.duality_image(u * v, "DAHA", params)
        u_img, _ = ncalg.duality_image(u, "DAHA", params)
        v_img, _ = ncalg.duality_image(v, "DAHA", params)
        # reduce the image of the product in one pass, against the basis
        # product of the separately reduced images
        lhs = ncalg.reduce(uv_img, target)
        rhs = ncalg.multiply(
            ncalg.reduce(v_img, target), ncalg.reduce(u_img, target), target
        )
        if lhs != rhs:
            return "not anti-multiplicative"
    # embedding compatibility on short words
    for word in (("K0",), ("K1",), ("K0", "K1"), ("K1", "K0", "T1")):
        u = Element("aw", {word: _ONE})
        via_daha, _ = ncalg.duality_image(ncalg.embed_element(u, params), "DAHA", params)
        u_img, _ = ncalg.duality_image(u, "AW", params)
        if ncalg.reduce(via_daha, target) != ncalg.embed_aw(u_img, target):
            return f"embedding compatibility failed on {' '.join(word)}"
    return ""


def _check_shiftops(params, bounds, rng) -> str:
    res_minus, res_plus = ncalg.shift_operator_identities(params)
    if not res_minus.is_zero():
        return f"lowering identity: {_fmt_nf(res_minus)}"
    if not res_plus.is_zero():
        return f"raising identity: {_fmt_nf(res_plus)}"
    # perturbed control: shifting the middle scalar must break the identity
    vals = params.values()
    ab = vals["a"] * vals["b"]
    cd = vals["c"] * vals["d"]
    q = vals["q"]
    bad = Element(
        "daha",
        {("Y",): _ONE, ("Yi",): ab * ab * cd / q, (): -(ab * cd / q + ab) + _ONE},
    )
    f_sym = Element("daha", {("T1",): _ONE, (): _ONE})
    if ncalg.reduce(f_sym * bad * f_sym, params).is_zero():
        return "perturbed lowering identity still reduced to zero"
    return ""


def _check_centralizer(params, bounds, rng) -> str:
    p_sym, _ = ncalg.idempotents(params)
    for word in (("K0",), ("K1",), ("K0", "K1"), ("K1", "K0"), ("K0", "K0", "K1")):
        u = ncalg.embed_element(Element("aw", {word: _ONE}), params)
        nf = ncalg.centralizer_probe(u, params)
        if not nf.is_zero():
            return f"embedded {' '.join(word)} not in centralizer: {_fmt_nf(nf)}"
        # membership implies one-sided compression: S(U) = U P_sym
        if ncalg.spherical(u, params) != ncalg.reduce(u * p_sym, params):
            return f"S(U) != U P_sym for {' '.join(word)}"
    # negative control: Z alone does not centralize T1
    if ncalg.centralizer_probe(Element.generator("Z"), params).is_zero():
        return "Z unexpectedly commutes with T1"
    return ""


def _check_center_daha(params, bounds, rng) -> str:
    degree = bounds.get("center_degree", 3)
    for key, noncommuting in ncalg.center_probe(degree, params):
        if not noncommuting:
            return f"basis element {key} commutes with all generators"
    return ""


def _check_eigen_pn(params, bounds, rng) -> str:
    max_n = bounds.get("max_n", 8)
    for n in range(max_n + 1):
        p_n = polyrep.askey_wilson(n, params)
        if p_n.coeff(n) != _ONE:
            return f"P_{n} is not monic"
        if not p_n.is_symmetric():
            return f"P_{n} is not symmetric"
        out = polyrep.apply_dsym(p_n, params)
        want = p_n.scale(eigenvalue(n, params))
        if out != want:
            return f"eigenvalue equation fails at n={n}: {_fmt_poly(out - want)}"
    # eigenvalue distinctness
    lams = [eigenvalue(n, params) for n in range(21)]
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            if lams[i] == lams[j]:
                return f"eigenvalues coincide: n={i}, n={j}"
    return ""


def _check_recurrence(params, bounds, rng) -> str:
    for n in range(7):
        beta, gamma = polyrep.recurrence_coeffs(n, params)
        if n == 0 and not gamma.is_zero():
            return "gamma_0 != 0"
        if n >= 1 and gamma.is_zero():
            return f"gamma_{n} = 0 at generic parameters"
    return ""


def _check_casimir_scalar(params, bounds, rng) -> str:
    q0 = structure_constants(params).Q0
    for k in range(bounds.get("max_degree", 6) + 1):
        f = polyrep.LaurentPoly.symmetric_basis(k)
        out = polyrep.casimir_apply(f, params)
        want = f.scale(q0)
        if out != want:
            return f"k={k}: {_fmt_poly(out - want)}"
    return ""


def _check_awrel_inrep(params, bounds, rng) -> str:
    residuals = polyrep.check_aw_relations_in_rep(
        bounds.get("max_degree", 6), params
    )
    for idx, res in enumerate(residuals):
        if not res.is_zero():
            rel = 1 + (idx % 2)
            k = idx // 2
            return f"relation {rel} on z^{k}+z^-{k}: {_fmt_poly(res)}"
    # negative control
    perturbed = polyrep.check_aw_relations_in_rep(1, params, perturb_B=_ONE)
    if all(r.is_zero() for r in perturbed):
        return "perturbed-B control unexpectedly passed"
    return ""


def _swapped_params(params: Params, x: str, y: str) -> Params:
    values = dict(params.values())
    values[x], values[y] = values[y], values[x]
    if params.is_symbolic or params.value_override is not None:
        return dataclasses.replace(
            params,
            value_override=tuple(sorted(values.items())),
            label=params.label + f";swap({x},{y})",
        )
    assignments = {
        name: values[name].as_fraction() for name in PARAM_NAMES
    }
    return make_params(
        "specialized", assignments, genericity_bound=params.genericity_bound
    )


def _check_symmetry_abcd(params, bounds, rng) -> str:
    for x, y in (("a", "b"), ("a", "c")):
        swapped = _swapped_params(params, x, y)
        for n in range(6):
            if polyrep.askey_wilson(n, params) != polyrep.askey_wilson(n, swapped):
                return f"P_{n} changes under swapping {x} and {y}"
    return ""


# ---------------------------------------------------------------------------
# Catalog


def _step_catalog_entries() -> list[CheckSpec]:
    entries = []
    descriptions = {
        "44": "(T1+1) Z^m (T1+1) = (Z^m + Z^-m + dominated) (T1+1)",
        "45": "(T1+1) Z^-m (T1+1) = (-ab(Z^m + Z^-m) + dominated) (T1+1)",
        "47": "(T1+1) Y^n (T1+1) = (-ab(Y^n + u^n Y^-n) + dominated) (T1+1), u = abcd/q",
        "48": "(T1+1) Y^-n (T1+1) = (u^-n Y^n + Y^-n + dominated) (T1+1)",
        "49": "(T1+1) Z^m Y^n (T1+1) = (Z^m Y^n - ab u^n Z^-m Y^-n + dominated) (T1+1)",
        "50": "(T1+1) Z^-m Y^n (T1+1) = (-(ab+1) Z^m Y^n - ab u^n Z^m Y^-n - ab Z^-m Y^n + dominated) (T1+1)",
        "51": "(T1+1) Z^m Y^-n (T1+1) = (Z^m Y^-n + u^-n Z^-m Y^n + (1+ab) Z^-m Y^-n + dominated) (T1+1)",
        "52": "(T1+1) Z^-m Y^-n (T1+1) = (u^-n Z^m Y^n - ab Z^-m Y^-n + dominated) (T1+1)",
        "53": "K1^m (T1+1) = (Z^m + Z^-m + dominated) (T1+1), K-letters embedded",
        "54": "K0^n (T1+1) = (Y^n + u^n Y^-n + dominated) (T1+1)",
        "55": "K1^m K0^n (T1+1) = (Z^m Y^n + Z^-m Y^n + u^n Z^m Y^-n + u^n Z^-m Y^-n + dominated) (T1+1)",
        "56": "K1^(m-1) K0 K1 K0^(n-1) (T1+1) = (q Z^m Y^n + q^-1 Z^-m Y^n + q^-1 u^n Z^m Y^-n + q^-1 u^n (1+ab-q^2 ab) Z^-m Y^-n + dominated) (T1+1)",
    }
    for num, desc in descriptions.items():
        entries.append(
            CheckSpec(f"step.{num}", desc, "exact", _check_step(num))
        )
        a_desc = desc.replace("(T1+1)", "(T1+ab)")
        if f"a{num}" in ncalg.STEP_IDENTITIES:
            entries.append(
                CheckSpec(
                    f"astep.{num}",
                    "antispherical analogue: " + a_desc,
                    "exact",
                    _check_step(f"a{num}"),
                )
            )
    entries.append(
        CheckSpec(
            "step.44.exact",
            "(T1+1) Z (T1+1) = (Z + Z^-1 - (a+b)) (T1+1), coefficient-exact",
            "exact",
            _check_step("44.exact"),
        )
    )
    entries.append(
        CheckSpec(
            "step.45.exact",
            "(T1+1) Z^-1 (T1+1) = (-ab(Z + Z^-1) + a+b) (T1+1), coefficient-exact",
            "exact",
            _check_step("45.exact"),
        )
    )
    entries.append(
        CheckSpec(
            "step3.spherical",
            "the four leading-coefficient displays expressing (T1+1) Z^(+-m) Y^(+-n) (T1+1) "
            "through embedded K-words times (T1+1), up to dominated terms",
            "exact",
            _check_step_group(["sph3.1", "sph3.2", "sph3.3", "sph3.4"]),
        )
    )
    entries.append(
        CheckSpec(
            "step3.antispherical",
            "the four antispherical leading-coefficient displays with factor (T1+ab) "
            "and K0 read at shifted parameters",
            "exact",
            _check_step_group(["asph3.1", "asph3.2", "asph3.3", "asph3.4"]),
        )
    )
    return entries


def _build_catalog() -> list[CheckSpec]:
    catalog = [
        CheckSpec(
            "relations-daha",
            "each defining relation of the five-generator presentation reduces to zero "
            "and every rewrite rule rewrites into canonically ordered monomials",
            "exact",
            _check_relations_daha,
        ),
        CheckSpec(
            "confluence-spot",
            "random words reduce to the same normal form under leftmost and rightmost "
            "strategies, and reduction is a fixed point",
            "exact",
            _check_confluence_spot,
        ),
        CheckSpec(
            "embed.rel34",
            "first q-commutator relation of the central extension maps to zero under "
            "K0 -> Y + (abcd/q) Y^-1, K1 -> Z + Z^-1",
            "exact",
            _embed_check("rel34"),
        ),
        CheckSpec(
            "embed.rel35",
            "second q-commutator relation of the central extension maps to zero",
            "exact",
            _embed_check("rel35"),
        ),
        CheckSpec(
            "embed.rel36",
            "Casimir relation of the central extension maps to zero",
            "exact",
            _embed_check("rel36"),
        ),
        CheckSpec(
            "embed.t1central",
            "T1 commutes with the images of K0 and K1",
            "exact",
            _check_t1central,
        ),
        CheckSpec(
            "idempotents",
            "(1-ab)^-1(T1+1) and (ab-1)^-1(T1+ab) are orthogonal idempotents summing "
            "to 1, and (T1+ab)(T1+1) = 0",
            "exact",
            _check_idempotents,
        ),
        CheckSpec(
            "spherical.mult",
            "two-sided compression satisfies S(U)S(V) = S(U P_sym V), and S(U) = U P_sym "
            "on elements commuting with T1",
            "exact",
            _check_spherical_mult,
        ),
        CheckSpec(
            "iso.spherical.mult",
            "U -> (1-ab)^-1 U~ (T1+1) is multiplicative on K-words of total length <= 4",
            "exact",
            _check_iso_mult("sym"),
        ),
        CheckSpec(
            "iso.antispherical.mult",
            "U -> (ab-1)^-1 U~ (T1+ab) with K0 -> qK0 is multiplicative on K-words of "
            "total length <= 4",
            "exact",
            _check_iso_mult("asym"),
        ),
    ]
    catalog.extend(_step_catalog_entries())
    catalog.extend(
        [
            CheckSpec(
                "o-filtration",
                "the strict-dominance predicate accepts exactly the terms with "
                "|k| <= |m|, |l| <= |n|, (|k|,|l|) != (|m|,|n|)",
                "exact",
                _check_o_filtration,
            ),
            CheckSpec(
                "duality.aw",
                "the anti-map K0 -> s K1, K1 -> a^-1 K0 (s^2 = abcd/q) sends every "
                "defining relation to zero in the dual-parameter algebra "
                "(s, ab/s, ac/s, ad/s); quotient relations vanish modulo T1 = -ab; the "
                "Casimir scalar transforms by qa/(bcd) and the Casimir word by bcd/(qa)",
                "exact",
                _check_duality_aw,
            ),
            CheckSpec(
                "duality.daha",
                "the anti-map T1 -> T1, Y -> s Z^-1, Z -> a Y^-1 sends every defining "
                "relation to zero in the dual-parameter algebra and is involutive on "
                "parameters",
                "exact",
                _check_duality_daha,
            ),
            CheckSpec(
                "shiftops",
                "(T1+1)(Y + (a^2b^2cd/q) Y^-1 - (abcd/q + ab))(T1+1) = 0 and "
                "(T1+ab)(Y + (cd/q) Y^-1 - (cd/q + 1))(T1+ab) = 0, with a perturbed "
                "negative control",
                "exact",
                _check_shiftops,
            ),
            CheckSpec(
                "centralizer.samples",
                "embedded K-words commute with T1 and their compression collapses to "
                "one-sided multiplication; Z alone does not commute",
                "exact",
                _check_centralizer,
            ),
            CheckSpec(
                "center.daha",
                "every non-identity basis element Z^m Y^n T1^i with |m|+|n|+i <= 3 "
                "fails to commute with at least one generator",
                "exact",
                _check_center_daha,
            ),
            CheckSpec(
                "eigen.Pn",
                "the difference operator sends the monic polynomial P_n to "
                "(q^-n + abcd q^(n-1)) P_n for n <= 8; eigenvalues distinct for n <= 20",
                "prob",
                _check_eigen_pn,
            ),
            CheckSpec(
                "recurrence",
                "(z + z^-1) P_n = P_(n+1) + beta_n P_n + gamma_n P_(n-1) projects with "
                "zero residual for n <= 6; gamma_0 = 0 and gamma_n != 0 for n >= 1",
                "prob",
                _check_recurrence,
            ),
            CheckSpec(
                "casimir.scalar",
                "the degree-four Casimir word acts as the scalar Q0 on z^k + z^-k "
                "for k <= 6",
                "prob",
                _check_casimir_scalar,
            ),
            CheckSpec(
                "awrel.inrep",
                "both q-commutator operator relations annihilate z^k + z^-k for k <= 6; "
                "perturbing B breaks them",
                "prob",
                _check_awrel_inrep,
            ),
            CheckSpec(
                "symmetry.abcd",
                "P_n is invariant under swapping a with b and a with c, n <= 5",
                "prob",
                _check_symmetry_abcd,
            ),
        ]
    )
    return catalog


CHECK_CATALOG: list[CheckSpec] = _build_catalog()
_CATALOG_BY_ID = {spec.id: spec for spec in CHECK_CATALOG}


def check_ids() -> list[str]:
    return [spec.id for spec in CHECK_CATALOG]


# ---------------------------------------------------------------------------
# Runner


def _run_one(
    spec: CheckSpec, config: RunConfig
) -> CheckResult:
    mode = config.mode or spec.default_mode
    bounds = {
        "max_mn": config.max_mn,
        "max_degree": config.max_degree,
        "max_n": config.max_n,
    }
    rng = random.Random(f"{config.seed}:{spec.id}")
    start = time.monotonic()
    trials = 0
    verdict = "pass"
    summary = ""
    try:
        if mode == "exact":
            params = config.params or make_params("symbolic")
            trials = 1
            summary = spec.runner(params, bounds, rng)
        else:
            for _ in range(config.trials):
                point = random_admissible_point(rng)
                params = make_params("specialized", point)
                trials += 1
                summary = spec.runner(params, bounds, rng)
                if summary:
                    summary = f"at {params.label}: {summary}"
                    break
        if summary:
            verdict = "fail"
    except KernelError as exc:
        verdict = "error"
        summary = f"{type(exc).__name__}: {exc}"
    except (ValueError, ArithmeticError, AssertionError) as exc:
        verdict = "error"
        summary = f"{type(exc).__name__}: {exc}"
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return CheckResult(spec.id, verdict, summary, trials, elapsed_ms)


def run_checks(config: RunConfig) -> Report:
    """Run the selected checks and aggregate a report."""
    if config.mode not in (None, "exact", "prob"):
        raise ConfigError(f"unknown mode {config.mode!r}")
    if config.trials < 1:
        raise ConfigError("trials must be positive")
    selected = list(config.checks or [])
    if not selected or selected == ["all"]:
        specs = CHECK_CATALOG
    else:
        unknown = [cid for cid in selected if cid not in _CATALOG_BY_ID]
        if unknown:
            raise ConfigError(
                f"unknown check ids: {', '.join(unknown)}; "
                f"known ids: {', '.join(check_ids())}"
            )
        wanted = set(selected)
        specs = [spec for spec in CHECK_CATALOG if spec.id in wanted]
    results = [_run_one(spec, config) for spec in specs]
    overall = "pass" if all(r.verdict == "pass" for r in results) else "fail"
    params_echo = config.params.label if config.params else "symbolic"
    return Report(TOOL_VERSION, params_echo, config.seed, results, overall)


# ---------------------------------------------------------------------------
# Reports


def emit_report(report: Report, path: str, format: str = "json") -> None:
    if format == "json":
        text = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    elif format == "text":
        text = render_text(report)
    else:
        raise ConfigError(f"unknown report format {format!r}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def render_text(report: Report) -> str:
    lines = [
        f"tool_version {report.tool_version}",
        f"params {report.params_echo}",
        f"seed {report.seed}",
    ]
    for r in report.results:
        line = f"{r.id:24s} {r.verdict:5s} {r.elapsed_ms} ms"
        if r.residual_summary:
            line += f"  {r.residual_summary}"
        lines.append(line)
    lines.append(f"overall {report.overall}")
    return "\n".join(lines) + "\n"


def load_report(path: str) -> Report:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    results = [
        CheckResult(
            r["id"],
            r["verdict"],
            r["residual_summary"],
            r["trials"],
            r["elapsed_ms"],
        )
        for r in data["results"]
    ]
    return Report(
        data["tool_version"],
        data["params_echo"],
        data["seed"],
        results,
        data["overall"],
    )


# ---------------------------------------------------------------------------
# Expression parsing


_TOKEN_CHARS = {"+", "-", "*", "/", "^", "(", ")"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise ParseError(
            f"unexpected character {ch!r}", i, frozenset({"generator", "number"})
        )
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing an Element; scalars are carried
    as coefficients of the empty word, so mixed scalar/word arithmetic
    falls out of Element's own operations."""

    def __init__(self, text: str, alphabet: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet
        self.letters = (
            ncalg.DAHA_ALPHABET if alphabet == "daha" else ncalg.AW_ALPHABET
        )

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(
                f"expected {kind}, found {tok[1] or 'end of input'}",
                tok[2],
                frozenset({kind}),
            )
        return self.advance()

    def parse(self) -> Element:
        value = self.parse_expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(
                f"unexpected trailing {tok[1]!r}",
                tok[2],
                frozenset({"+", "-", "*", "/", "^", "end of input"}),
            )
        return value

    def parse_expr(self) -> Element:
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.advance()[0] == "-"
        value = self.parse_term()
        if negate:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            term = self.parse_term()
            value = value + term if op == "+" else value - term
        return value

    def parse_term(self) -> Element:
        value = self.parse_factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            factor = self.parse_factor()
            if op == "*":
                value = value * factor
            else:
                scalar = self._as_scalar(factor)
                value = value * scalar.inv()
        return value

    def parse_factor(self) -> Element:
        atom_pos = self.peek()[2]
        value = self.parse_atom()
        if self.peek()[0] == "^":
            self.advance()
            sign = 1
            if self.peek()[0] == "-":
                self.advance()
                sign = -1
            tok = self.expect("INT")
            exponent = sign * int(tok[1])
            value = self._power(value, exponent, atom_pos)
        return value

    def parse_atom(self) -> Element:
        tok = self.peek()
        if tok[0] == "(":
            self.advance()
            value = self.parse_expr()
            self.expect(")")
            return value
        if tok[0] == "INT":
            self.advance()
            return Element(
                self.alphabet, {(): RatFunc.from_rational(int(tok[1]))}
            )
        if tok[0] == "NAME":
            self.advance()
            name = tok[1]
            if name in self.letters:
                return Element(self.alphabet, {(name,): _ONE})
            if name in PARAM_NAMES:
                return Element(self.alphabet, {(): RatFunc.gen(name)})
            raise ParseError(
                f"unknown name {name!r} for the {self.alphabet} alphabet",
                tok[2],
                frozenset(self.letters) | frozenset(PARAM_NAMES),
            )
        raise ParseError(
            f"expected a value, found {tok[1] or 'end of input'}",
            tok[2],
            frozenset({"generator", "number", "("}),
        )

    def _as_scalar(self, e: Element) -> RatFunc:
        if set(e.terms) <= {()}:
            return e.terms.get((), RatFunc.zero())
        raise ParseError(
            "division is only defined by scalar expressions",
            self.peek()[2],
            frozenset({"scalar"}),
        )

    _INVERTIBLE = {"Y": "Yi", "Yi": "Y", "Z": "Zi", "Zi": "Z"}

    def _power(self, value: Element, exponent: int, pos: int) -> Element:
        if exponent >= 0:
            scalar = None
            if set(value.terms) <= {()}:
                scalar = value.terms.get((), RatFunc.zero())
            if scalar is not None:
                return Element(self.alphabet, {(): scalar**exponent})
            return value**exponent
        # negative exponent: scalar, or a single invertible letter
        if set(value.terms) <= {()}:
            scalar = value.terms.get((), RatFunc.zero())
            return Element(self.alphabet, {(): scalar**exponent})
        if len(value.terms) == 1:
            (word, coef), = value.terms.items()
            if len(word) == 1 and word[0] in self._INVERTIBLE and coef == _ONE:
                inverse = self._INVERTIBLE[word[0]]
                return Element(self.alphabet, {(inverse,) * (-exponent): _ONE})
        raise ParseError(
            "negative exponents apply only to Y, Z, or scalars",
            pos,
            frozenset({"Y", "Z", "scalar"}),
        )


def parse_expression(text: str, alphabet: str = "daha") -> Element:
    """Parse an expression over the requested alphabet.

    Grammar: generators (T1, Y, Yi, Z, Zi or K0, K1, T1), parameter names
    q,a,b,c,d and integer literals as scalars, '+', '-', '*', '/'
    (division by scalars), '^' with integer exponents (negative allowed on
    Y and Z, meaning inverse powers), and parentheses.
    """
    if alphabet not in ("daha", "aw"):
        raise ConfigError(f"unknown alphabet {alphabet!r}")
    return _Parser(text, alphabet).parse()


# ---------------------------------------------------------------------------
# Configuration parsing


_CONFIG_KEYS = {
    "checks",
    "mode",
    "seed",
    "trials",
    "max-mn",
    "max-degree",
    "max-n",
    "params",
    "symbolic",
    "out",
    "format",
}


def parse_param_assignments(text: str) -> dict[str, Fraction]:
    """Parse "q=3/2,a=2,..." into exact rational assignments."""
    out: dict[str, Fraction] = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ConfigError(f"bad parameter assignment {piece!r}; use name=value")
        name, _, value = piece.partition("=")
        name = name.strip()
        if name not in PARAM_NAMES:
            raise ConfigError(f"unknown parameter {name!r}")
        try:
            out[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad rational value for {name}: {value!r}") from exc
    missing = [n for n in PARAM_NAMES if n not in out]
    if missing:
        raise ConfigError(f"missing parameter assignments: {', '.join(missing)}")
    return out


def parse_config_file(path: str) -> dict[str, str]:
    """Read a line-based key = value configuration file."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            # split at the first '=': parameter assignments contain '='
            key, _, value = line.partition("=")
            key = key.strip().replace("_", "-")
            if key not in _CONFIG_KEYS:
                raise ConfigError(
                    f"{path}:{lineno}: unknown key {key!r}; "
                    f"known: {', '.join(sorted(_CONFIG_KEYS))}"
                )
            out[key] = value.strip()
    return out


def config_from_options(options: Mapping[str, str]) -> RunConfig:
    """Build a RunConfig from string options (config file or CLI merge),
    validating every value."""
    config = RunConfig()
    if "checks" in options and options["checks"]:
        value = options["checks"].strip()
        config.checks = (
            None if value == "all" else [c.strip() for c in value.split(",") if c.strip()]
        )
    if "mode" in options and options["mode"]:
        mode = options["mode"].strip()
        if mode not in ("exact", "prob"):
            raise ConfigError(f"mode must be exact or prob, got {mode!r}")
        config.mode = mode
    for key, attr in (
        ("seed", "seed"),
        ("trials", "trials"),
        ("max-mn", "max_mn"),
        ("max-degree", "max_degree"),
        ("max-n", "max_n"),
    ):
        if key in options and options[key]:
            try:
                setattr(config, attr, int(options[key]))
            except ValueError as exc:
                raise ConfigError(f"{key} must be an integer") from exc
    symbolic = options.get("symbolic", "").strip().lower() in ("1", "true", "yes")
    if "params" in options and options["params"] and not symbolic:
        assignments = parse_param_assignments(options["params"])
        try:
            config.params = make_params("specialized", assignments)
        except (DegenerateParameters, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
    return config
