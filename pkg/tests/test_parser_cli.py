from __future__ import annotations

import json
import random

import pytest

from resym import (DifferentialForm, ExtensionField, LaurentPoly, ParseError,
                   PolyQ, RationalFunction, parse_expression,
                   parse_extension_modulus, parse_form, parse_laurent,
                   parse_rational_function, render_form, render_laurent,
                   render_rational_function)
from resym.cli import main
from resym.verify import rand_laurent, rand_rational_function


def test_parse_form_example():
    form = parse_form("t1^-1*t2^-1 d(t1) ^ d(t2)", 2)
    assert form.f0 == LaurentPoly.monomial(2, (-1, -1))
    assert form.args == (LaurentPoly.variable(2, 1), LaurentPoly.variable(2, 2))


def test_parse_rational_function_example():
    rf = parse_rational_function("1/(t^2+1)")
    assert rf == RationalFunction(PolyQ.one(), PolyQ((1, 0, 1)))


def test_parse_error_offset():
    with pytest.raises(ParseError) as err:
        parse_laurent("t1^^2", 1)
    assert err.value.offset == 3


def test_parse_extension_elements():
    from fractions import Fraction
    field = ExtensionField(PolyQ((1, 0, 1)))
    poly = parse_laurent("3/2*t1^-2*t2^3 + (1+x)", 2, field)
    assert poly.coefficient((-2, 3)) == field.element((Fraction(3, 2),))
    assert poly.coefficient((0, 0)) == field.element((1, 1))


def test_parse_expression_dispatch():
    assert isinstance(parse_expression("t^-1 d(t)"), DifferentialForm)
    assert isinstance(parse_expression("1/(t^2+1)"), RationalFunction)
    assert isinstance(parse_expression("3/2*t^2 + t^-1"), LaurentPoly)


def test_modulus_parser():
    assert parse_extension_modulus("x^2+1") == PolyQ((1, 0, 1))
    assert parse_extension_modulus("x^3-x-2") == PolyQ((-2, -1, 0, 1))


def test_roundtrip_corpus():
    rng = random.Random(55)
    field = ExtensionField(PolyQ((1, 0, 1)))
    count = 0
    for _ in range(20):
        for dim in (1, 2):
            poly = rand_laurent(rng, dim, terms=3)
            assert parse_laurent(render_laurent(poly), dim) == poly
            count += 1
    for _ in range(10):
        rf = rand_rational_function(rng)
        assert parse_rational_function(render_rational_function(rf)) == rf
        count += 1
    for _ in range(10):
        dim = rng.choice([1, 2])
        form = DifferentialForm(rand_laurent(rng, dim),
                                [rand_laurent(rng, dim) for _ in range(dim)])
        assert parse_form(render_form(form), dim) == form
        count += 1
    ext_poly = LaurentPoly(1, field, {(-2,): field.element((1, 1)),
                                      (0,): field.element((0, 3))})
    assert parse_laurent(render_laurent(ext_poly), 1, field) == ext_poly
    count += 1
    assert count >= 50


# -- CLI ------------------------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, [json.loads(line) for line in out.splitlines() if line]


def test_cli_res(capsys):
    code, (payload,) = run_cli(capsys, "res", "--n", "1", "t^-1 d(t)")
    assert code == 0 and payload == {"value": "1"}


def test_cli_res_two_vars_inferred(capsys):
    code, (payload,) = run_cli(capsys, "res", "t1^-1*t2^-1 d(t1) ^ d(t2)")
    assert code == 0 and payload == {"value": "1"}


def test_cli_res_extension(capsys):
    code, (payload,) = run_cli(capsys, "res", "--n", "1", "--ext", "x^2+1", "t^-1 d(t)")
    assert code == 0 and payload == {"value": "2"}


def test_cli_res_error(capsys):
    code, (payload,) = run_cli(capsys, "res", "--n", "1", "t^^1 d(t)")
    assert code == 1 and "error" in payload


def test_cli_trace(capsys):
    op = [{"coeff": "3/2", "shift": [0], "window": [[0, 4]]}]
    code, (payload,) = run_cli(capsys, "trace", "--n", "1", json.dumps(op))
    assert code == 0 and payload == {"value": "6"}


def test_cli_trace_refusal(capsys):
    op = [{"coeff": "1", "shift": [0], "window": [["-inf", "inf"]]}]
    code, (payload,) = run_cli(capsys, "trace", "--n", "1", json.dumps(op))
    assert code == 1 and "error" in payload


def test_cli_expand(capsys):
    code, (payload,) = run_cli(capsys, "expand", "1/t", "--place", "t", "--order", "3")
    assert code == 0
    assert payload["coefficients"]["-1"] == "1"


def test_cli_global_sum(capsys):
    code, (payload,) = run_cli(capsys, "global-sum", "1/t")
    assert code == 0
    assert payload["sum"] == "0"
    assert {e["place"]: e["residue"] for e in payload["places"]} == \
        {"t": "1", "inf": "-1"}


def test_cli_nodal(capsys):
    code, (payload,) = run_cli(capsys, "nodal", "--order", "12")
    assert code == 0 and payload == {"ok": True}


def test_cli_verify_nodal_suite(capsys):
    code, (payload,) = run_cli(capsys, "verify", "--suite", "nodal")
    assert code == 0
    assert payload["failures"] == []
    assert payload["cases"] >= 1


def test_cli_verify_compare_suite(capsys):
    code, (payload,) = run_cli(capsys, "verify", "--suite", "compare")
    assert code == 0
    assert payload["failures"] == []


def test_cli_verify_exit_code_tracks_failures(capsys, monkeypatch):
    import resym.cli as cli_module
    monkeypatch.setattr(cli_module, "run_suite",
                        lambda name: {"suite": name, "cases": 1, "failures": ["boom"]})
    code, (payload,) = run_cli(capsys, "verify", "--suite", "axioms")
    assert code == 1 and payload["failures"] == ["boom"]


def test_cli_unknown_flag_is_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["res", "--frobnicate", "t^-1 d(t)"])
    assert exc.value.code != 0


def test_cli_batch(tmp_path, capsys):
    tasks = [
        {"op": "res", "form": "t^-1 d(t)", "n": 1},
        {"op": "global-sum", "function": "1/t"},
        {"op": "nodal", "order": 6},
    ]
    path = tmp_path / "tasks.jsonl"
    path.write_text("\n".join(json.dumps(t) for t in tasks), encoding="utf-8")
    code, payloads = run_cli(capsys, "--json-lines", str(path))
    assert code == 0
    assert payloads[0]["result"] == "1"
    assert payloads[1]["result"] == "0"
    assert payloads[1]["per_place"][0]["place"] == "t"
    assert payloads[2]["result"] is True


def test_cli_batch_error_line(tmp_path, capsys):
    path = tmp_path / "tasks.jsonl"
    path.write_text(json.dumps({"op": "res", "form": "t^^1 d(t)", "n": 1}),
                    encoding="utf-8")
    code, payloads = run_cli(capsys, "--json-lines", str(path))
    assert code == 1 and "error" in payloads[0]
