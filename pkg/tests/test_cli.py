import json
from importlib import resources

import jsonschema

from padicroots.cli import main
from padicroots.sparsepoly import parse_poly, parse_poly_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def load_schema(name):
    with resources.files("padicroots.schemas").joinpath(name).open() as fh:
        return json.load(fh)


def test_solve_json_schema_and_count(capsys):
    code, out, _ = run_cli(capsys, "solve", "--p", "3", "738 - 10*x^2 + x^20", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("solve.json"))
    assert payload["count"] == 8
    # polynomial round-trips through the emitted JSON
    assert parse_poly_json(payload["input"]) == parse_poly("738 - 10*x^2 + x^20")


def test_solve_digits(capsys):
    code, out, _ = run_cli(capsys, "solve", "--p", "17", "1 - x^340", "--digits", "6", "--json")
    payload = json.loads(out)
    assert payload["count"] == 4
    assert all(len(r["digits"]) == 6 for r in payload["roots"])
    firsts = sorted(tuple(r["digits"][:2]) for r in payload["roots"])
    assert firsts == sorted([(1, 0), (4, 2), (13, 14), (16, 16)])


def test_count_subcommand(capsys):
    code, out, _ = run_cli(capsys, "count", "--p", "17", "1 - x^397")
    assert code == 0 and out.strip() == "1"


def test_polygon_subcommand(capsys):
    code, out, _ = run_cli(capsys, "polygon", "--p", "3", "729*x^5 - x^2 + 18*x - 81", "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("polygon.json"))
    assert [e["length"] for e in payload["edges"]] == [2, 3]
    code, out, _ = run_cli(capsys, "polygon", "--p", "2", "x^5 - 64*x^2 + 32*x - 4", "--arch", "--json")
    payload = json.loads(out)
    assert [e["length"] for e in payload["edges"]] == [1, 1, 3]


def test_tree_subcommand(capsys):
    code, out, _ = run_cli(capsys, "tree", "--p", "17", "--k", "3", "1 - x^340", "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("tree.json"))
    assert len(payload["nodes"]) == 5
    assert sorted(n["digit_path"] for n in payload["nodes"] if n["depth"] == 1) == [
        [1], [4], [13], [16]
    ]


def test_bounds_subcommand(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--p", "3", "--d", "20", "--H", "738", "--degenerate")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("bounds.json"))
    assert payload["trinomial_separation_log"] < 0


def test_tetra_subcommand(capsys):
    code, out, _ = run_cli(capsys, "tetra", "--p", "3", "--h", "3", "--d", "4", "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("tetra.json"))
    assert payload["collision_order"] >= 4


def test_oracle_subcommand(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--p", "2", "x^10 + 11*x^2 - 12", "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("oracle.json"))
    assert payload["count"] == 6


def test_bench_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--p-list", "3", "5", "7", "--d-list", "10", "20", "40", "--H", "20"
    )
    assert code == 0
    lines = [ln for ln in out.strip().splitlines() if ln]
    assert len(lines) == 10  # header + 9 rows
    assert lines[0].startswith("p,d,H,wall_time,k_used,root_count")
    # deterministic non-time columns on repeat
    code, out2, _ = run_cli(
        capsys, "bench", "--p-list", "3", "5", "7", "--d-list", "10", "20", "40", "--H", "20"
    )
    strip_time = lambda text: [
        ",".join(col for i, col in enumerate(ln.split(",")) if i != 3)
        for ln in text.strip().splitlines()
    ]
    assert strip_time(out) == strip_time(out2)


def test_exit_codes(capsys):
    code, _, _ = run_cli(capsys, "solve", "--p", "4", "x^2 - 1")
    assert code == 1  # 4 is not prime -> computational error path
    code, _, _ = run_cli(capsys, "nonsense")
    assert code == 2


def test_usage_error_on_missing_p(capsys):
    assert run_cli(capsys, "solve", "x^2 - 1")[0] == 2
