"""The check catalog, runner, reports, and the expression/config parsers."""

import dataclasses
import json
from fractions import Fraction

import pytest

from rank1daha.errors import ConfigError, ParseError
from rank1daha.ncalg import Element
from rank1daha.params import RatFunc, make_params
from rank1daha.verify import (
    CHECK_CATALOG,
    TOOL_VERSION,
    RunConfig,
    check_ids,
    emit_report,
    load_report,
    parse_config_file,
    parse_expression,
    parse_param_assignments,
    render_text,
    run_checks,
)

ONE = RatFunc.one()


# ---------------------------------------------------------------------------
# Catalog shape


def test_catalog_ids_unique_and_complete():
    ids = check_ids()
    assert len(ids) == 49
    assert len(set(ids)) == 49
    for required in (
        "relations-daha",
        "embed.rel34",
        "idempotents",
        "step.44",
        "astep.56",
        "step.44.exact",
        "step3.spherical",
        "step3.antispherical",
        "duality.aw",
        "duality.daha",
        "shiftops",
        "eigen.Pn",
        "casimir.scalar",
        "awrel.inrep",
    ):
        assert required in ids


def test_catalog_statements_self_contained():
    for spec in CHECK_CATALOG:
        assert spec.statement.strip()
        assert spec.default_mode in ("exact", "prob")


# ---------------------------------------------------------------------------
# Runner behavior


def test_run_checks_filters_and_orders():
    config = RunConfig(checks=["idempotents", "embed.t1central"])
    report = run_checks(config)
    # results follow catalog order, not request order
    assert [r.id for r in report.results] == ["embed.t1central", "idempotents"]
    assert report.overall == "pass"
    assert report.tool_version == TOOL_VERSION
    assert report.params_echo == "symbolic"
    assert all(r.verdict == "pass" and r.trials == 1 for r in report.results)


def test_run_checks_rejects_bad_config():
    with pytest.raises(ConfigError):
        run_checks(RunConfig(checks=["no-such-check"]))
    with pytest.raises(ConfigError):
        run_checks(RunConfig(mode="approximate"))
    with pytest.raises(ConfigError):
        run_checks(RunConfig(trials=0))


def test_prob_mode_draws_admissible_points():
    config = RunConfig(checks=["symmetry.abcd"], trials=3)
    report = run_checks(config)
    (result,) = report.results
    assert result.verdict == "pass"
    assert result.trials == 3


def test_check_error_is_captured_not_raised():
    # abcd*q^3 = 1 slips past a genericity bound of 2; the polynomial
    # normalization then degenerates inside the check
    p = make_params(
        "specialized",
        {"q": Fraction(1, 2), "a": 2, "b": 2, "c": 2, "d": 1},
        genericity_bound=2,
    )
    report = run_checks(RunConfig(checks=["eigen.Pn"], mode="exact", params=p))
    (result,) = report.results
    assert result.verdict == "error"
    assert "DegenerateParameters" in result.residual_summary
    assert report.overall == "fail"


def test_reports_deterministic_for_fixed_seed(tmp_path):
    config = RunConfig(checks=["o-filtration", "symmetry.abcd"], trials=2, seed=7)
    paths = []
    for run in range(2):
        report = run_checks(config)
        for r in report.results:
            r.elapsed_ms = 0
        path = tmp_path / f"run{run}.json"
        emit_report(report, str(path))
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


# ---------------------------------------------------------------------------
# Reports


def test_report_json_round_trip(tmp_path):
    report = run_checks(RunConfig(checks=["o-filtration"]))
    path = tmp_path / "report.json"
    emit_report(report, str(path))
    loaded = load_report(str(path))
    assert dataclasses.asdict(loaded) == dataclasses.asdict(report)
    data = json.loads(path.read_text())
    assert data["overall"] == "pass"
    assert data["seed"] == 1729


def test_render_text_one_line_per_check():
    report = run_checks(RunConfig(checks=["o-filtration", "idempotents"]))
    text = render_text(report)
    lines = text.splitlines()
    assert len(lines) == 3 + len(report.results) + 1
    assert lines[0] == f"tool_version {TOOL_VERSION}"
    assert lines[-1] == "overall pass"
    assert any(line.startswith("idempotents") for line in lines)


def test_emit_report_text_format_and_unknown(tmp_path):
    report = run_checks(RunConfig(checks=["o-filtration"]))
    path = tmp_path / "report.txt"
    emit_report(report, str(path), format="text")
    assert path.read_text() == render_text(report)
    with pytest.raises(ConfigError):
        emit_report(report, str(tmp_path / "report.yaml"), format="yaml")


# ---------------------------------------------------------------------------
# Expression parsing


def test_parse_quadratic_product(sym):
    v = sym.values()
    ab = v["a"] * v["b"]
    e = parse_expression("(T1+1)*(T1+a*b)")
    assert e.terms == {("T1", "T1"): ONE, ("T1",): ab + 1, (): ab}


def test_parse_negative_powers_and_scalars():
    e = parse_expression("Y^-2")
    assert e.terms == {("Yi", "Yi"): ONE}
    e = parse_expression("T1/2")
    assert e.terms == {("T1",): RatFunc.from_rational(Fraction(1, 2))}
    e = parse_expression("q^-1*a")
    q, a = RatFunc.gen("q"), RatFunc.gen("a")
    assert e.terms == {(): a / q}


def test_parse_merges_equal_words():
    e = parse_expression("T1*T1 + T1*T1")
    assert e.terms == {("T1", "T1"): RatFunc.from_rational(2)}


def test_parse_aw_alphabet():
    e = parse_expression("q*K0*K1 - 2*K1", alphabet="aw")
    q = RatFunc.gen("q")
    assert e.terms == {("K0", "K1"): q, ("K1",): RatFunc.from_rational(-2)}
    with pytest.raises(ParseError):
        parse_expression("Y", alphabet="aw")
    with pytest.raises(ConfigError):
        parse_expression("T1", alphabet="hecke")


def test_parse_cancellation_drops_words():
    e = parse_expression("Z*Y - Z*Y")
    assert e.terms == {}


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        parse_expression("T1 + W0")
    assert info.value.position == 5
    assert "T1" in info.value.expected

    with pytest.raises(ParseError) as info:
        parse_expression("T1 T1")
    assert info.value.position == 3

    with pytest.raises(ParseError) as info:
        parse_expression("(T1")
    assert info.value.expected == frozenset({")"})

    with pytest.raises(ParseError):
        parse_expression("T1^-1")
    with pytest.raises(ParseError):
        parse_expression("1/(K0)", alphabet="aw")
    with pytest.raises(ParseError):
        parse_expression("")
    with pytest.raises(ParseError):
        parse_expression("T1 @ Z")


# ---------------------------------------------------------------------------
# Configuration parsing


def test_parse_param_assignments():
    out = parse_param_assignments("q=3/2, a=2,b=3,c=5,d=7")
    assert out == {
        "q": Fraction(3, 2),
        "a": Fraction(2),
        "b": Fraction(3),
        "c": Fraction(5),
        "d": Fraction(7),
    }


def test_parse_param_assignments_errors():
    with pytest.raises(ConfigError):
        parse_param_assignments("q=1,a=2,b=3,c=5,e=7")
    with pytest.raises(ConfigError):
        parse_param_assignments("q=1,a=2,b=3")
    with pytest.raises(ConfigError):
        parse_param_assignments("q=x,a=2,b=3,c=5,d=7")
    with pytest.raises(ConfigError):
        parse_param_assignments("q")


def test_parse_config_file(tmp_path):
    path = tmp_path / "verify.cfg"
    path.write_text(
        "# a comment\n"
        "\n"
        "checks = idempotents, o-filtration\n"
        "max_mn = 4\n"
        "params = q=3/2,a=2,b=3,c=5,d=7\n"
    )
    out = parse_config_file(str(path))
    assert out == {
        "checks": "idempotents, o-filtration",
        "max-mn": "4",
        "params": "q=3/2,a=2,b=3,c=5,d=7",
    }


def test_parse_config_file_errors(tmp_path):
    bad_key = tmp_path / "bad_key.cfg"
    bad_key.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad_key))

    bad_line = tmp_path / "bad_line.cfg"
    bad_line.write_text("just some words\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad_line))
