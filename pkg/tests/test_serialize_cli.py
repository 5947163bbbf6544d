import csv
import io
import json

import ramify.validity
from ramify import cli, serialize
from ramify.analyzer import parse_integer_polynomial
from ramify.enumeration import enumerate_invariants
from ramify.polygons import FinePolygon
from ramify.residue_field import make_field
from ramify.selftest import survey_case_problems
from ramify.templates import template_for_invariant, truncate_krasner
from ramify.validity import Violation


def test_field_json_round_trip():
    K = make_field(3, 2, 2, "g")
    data = serialize.field_to_json(K)
    assert data["modulus"] == [1, 0, 1]
    assert serialize.field_from_json(data) == K


def test_invariant_json_round_trips(ctx_q2, ctx_q3):
    for ctx, n in ((ctx_q2, 4), (ctx_q3, 3)):
        base = ctx.base
        for level, loader in [
            ("ram", serialize.ram_from_json),
            ("fine", serialize.fine_from_json),
            ("res", serialize.res_from_json),
            ("unif", serialize.unif_from_json),
        ]:
            for obj in enumerate_invariants(ctx, n, level)[0]:
                data = json.loads(json.dumps(serialize.invariant_to_json(obj)))
                assert loader(base, data) == obj


def test_fine_json_marks_tame_points(ctx_q2):
    Ps = FinePolygon(2, 6, ((1, 6), (2, 0), (4, 0), (6, 0)))
    data = serialize.fine_to_json(Ps)
    assert data["tame"] == [4, 6]
    assert data["hull"] == [[1, 6], [2, 0], [6, 0]]
    rels = {spec["x"]: spec["rel"] for spec in data["point_specs"]}
    assert rels == {1: "=", 2: "=", 4: "=", 6: "="}


def test_template_json_round_trip(ctx_q2):
    invs, _ = enumerate_invariants(ctx_q2, 2, "unif")
    T = truncate_krasner(template_for_invariant(ctx_q2, invs[0]), 1)
    data = json.loads(json.dumps(serialize.template_to_json(T)))
    assert serialize.template_from_json(data) == T


def test_polynomial_json_round_trip(ctx_q2):
    f = parse_integer_polynomial(ctx_q2.base, "x^8+2x^7+2x^6+2x^4+2")
    data = json.loads(json.dumps(serialize.polynomial_to_json(f)))
    assert serialize.polynomial_from_json(ctx_q2.base, data) == f


def test_csv_rows_round_trip(ctx_q2, ctx_q3):
    for ctx, n in ((ctx_q2, 4), (ctx_q3, 3)):
        for level in ("ram", "fine", "res", "unif"):
            for index, obj in enumerate(enumerate_invariants(ctx, n, level)[0]):
                row = serialize.invariant_to_csv_row(level, index, obj)
                assert serialize.invariant_from_csv_row(ctx.base, level, row) == obj


# ---------------------------------------------------------------------------
# CLI


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_enumerate_json_and_csv_agree(capsys):
    code, out_json, _ = run_cli(
        ["enumerate", "--p", "2", "--degree", "4", "--level", "unif"], capsys
    )
    assert code == 0
    doc = json.loads(out_json)
    assert doc["schema"] == 1 and doc["level"] == "unif"

    code, out_csv, _ = run_cli(
        ["enumerate", "--p", "2", "--degree", "4", "--level", "unif", "--format", "csv"],
        capsys,
    )
    assert code == 0
    base = make_field(2, 1, 1, 1)
    rows = list(csv.reader(io.StringIO(out_csv)))
    assert rows[0] == serialize.CSV_COLUMNS["unif"]
    from_csv = [
        serialize.invariant_from_csv_row(base, "unif", row) for row in rows[1:]
    ]
    from_json = [
        serialize.unif_from_json(base, record) for record in doc["results"]
    ]
    assert from_csv == from_json
    assert doc["count"] == len(from_csv)


def test_cli_enumerate_deterministic_across_runs_and_threads(capsys, monkeypatch):
    args = ["enumerate", "--p", "2", "--degree", "8", "--level", "fine", "--stats"]
    code1, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    monkeypatch.setenv("RAMIFY_THREADS", "3")
    code3, out3, _ = run_cli(args, capsys)
    assert code1 == code2 == code3 == 0
    assert out1 == out2 == out3


def test_cli_enumerate_expand_degree_two(capsys):
    code, out, _ = run_cli(
        [
            "enumerate",
            "--p",
            "2",
            "--degree",
            "2",
            "--level",
            "unif",
            "--expand",
            "--reduce",
            "--truncate",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 2
    sizes = sorted(r["cardinality"] for r in doc["results"])
    assert sizes == [2, 4]
    assert sum(len(r["polynomials"]) for r in doc["results"]) == 6


def test_cli_config_errors(capsys):
    bad_flag_combos = [
        ["enumerate", "--p", "2", "--degree", "2", "--level", "ram", "--expand",
         "--truncate"],
        ["enumerate", "--p", "2", "--degree", "2", "--level", "fine", "--reduce"],
        ["enumerate", "--p", "2", "--degree", "2", "--level", "unif", "--expand"],
        ["enumerate", "--p", "4", "--degree", "2", "--level", "ram"],
        ["enumerate", "--p", "2", "--degree", "0", "--level", "ram"],
        ["analyze", "--p", "2"],
        ["analyze", "--p", "2", "--f", "2", "x^2-2"],
        ["selftest", "--case", "2:8:5"],
        ["selftest", "--case", "nonsense"],
    ]
    for args in bad_flag_combos:
        code, _, err = run_cli(args, capsys)
        assert code == 2, args
        assert "error" in err


def test_cli_analyze_degree_eight(capsys):
    code, out, _ = run_cli(["analyze", "--p", "2", "x^8+2x^7+2x^6+2x^4+2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["fine"]["points"] == [[1, 7], [2, 6], [4, 4], [8, 0]]
    assert doc["polygon"]["vertices"] == [[1, 7], [8, 0]]
    assert doc["phi0"] == "1"


def test_cli_analyze_quadratic(capsys):
    code, out, _ = run_cli(["analyze", "--p", "2", "x^2-2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["polygon"]["vertices"] == [[1, 2], [2, 0]]
    assert doc["phi0"] == "1"


def test_cli_analyze_json_input(capsys, tmp_path):
    doc = {"n": 2, "digits": [{"i": 0, "k": 1, "residue": "1"}]}
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(["analyze", "--p", "2", "--json", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["polygon"]["vertices"] == [[1, 2], [2, 0]]


def test_cli_analyze_rejects_non_eisenstein(capsys):
    code, _, err = run_cli(["analyze", "--p", "2", "x^2-1"], capsys)
    assert code == 3
    assert "Eisenstein" in err


def test_cli_selftest_small_cases(capsys):
    code, out, _ = run_cli(["selftest", "--case", "2:2:3", "--case", "3:3:2"], capsys)
    assert code == 0
    assert out.count(": ok") == 2


def test_selftest_detects_injected_ore2_fault(ctx_q2, survey_q2_n4, monkeypatch):
    # dropping the Ore 2 condition admits fine polygons no polynomial attains,
    # e.g. [(1, 8), (4, 0)] in degree 4; the survey cross-check must object
    real = ramify.validity._condition_violations

    def no_ore2(ctx, n, positions, ell, s_values):
        return [v for v in real(ctx, n, positions, ell, s_values) if v is not Violation.ORE2]

    monkeypatch.setattr(ramify.validity, "_condition_violations", no_ore2)
    problems = survey_case_problems(ctx_q2, 4, 5, survey=survey_q2_n4)
    assert any("enumerated but not surveyed" in p for p in problems)


def test_selftest_clean_on_small_case(ctx_q2, survey_q2_n2):
    assert survey_case_problems(ctx_q2, 2, 3, survey=survey_q2_n2) == []
