import json

import pytest

from fmc.cli import main, render_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def assert_roundtrip(document):
    parsed = json.loads(document)
    assert render_json(parsed) == document.rstrip("\n")


class TestContractExamples:
    def test_h_poly_bytes(self, capsys):
        code, out, err = run_cli(
            capsys, "h-poly", "--n", "3", "--d", "2", "--format", "json"
        )
        assert code == 0
        assert out == '{"n":3,"d":2,"coeffs":[0,1,4,1]}\n'
        assert err == ""

    def test_verify_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--max-n", "4", "--max-d", "2")
        assert code == 0
        lines = out.strip().splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1] == "OVERALL PASS"

    def test_nests_zero_rejected(self, capsys):
        code, out, err = run_cli(capsys, "nests", "--n", "0")
        assert code == 2
        assert out == ""
        assert "--n" in err


class TestJsonStability:
    @pytest.mark.parametrize(
        "argv",
        [
            ("nests", "--n", "3", "--format", "json"),
            ("h-poly", "--n", "4", "--d", "3", "--format", "json"),
            ("egf", "--n", "4", "--d", "2", "--verify", "--format", "json"),
            ("mult", "--n", "4", "--d", "2", "--format", "json"),
            (
                "decompose", "--theory", "lawson", "--n", "3", "--d", "2",
                "--format", "json",
            ),
            (
                "decompose", "--theory", "lawson", "--n", "2", "--d", "2",
                "--p", "1", "--k", "2", "--format", "json",
            ),
            (
                "decompose", "--theory", "db", "--n", "2", "--d", "2",
                "--p", "1", "--k", "2", "--format", "json",
            ),
            (
                "decompose", "--theory", "chow", "--n", "2", "--d", "3",
                "--p", "2", "--format", "json",
            ),
            (
                "decompose", "--theory", "lawson", "--n", "2", "--d", "2",
                "--mode", "ranks", "--space", "p2", "--p", "1", "--k", "2",
                "--format", "json",
            ),
            (
                "decompose", "--theory", "betti", "--n", "2", "--d", "2",
                "--mode", "ranks", "--space", "p2", "--format", "json",
            ),
            ("verify", "--max-n", "3", "--max-d", "2", "--format", "json"),
        ],
    )
    def test_roundtrip(self, capsys, argv):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        assert_roundtrip(out)

    def test_determinism(self, capsys):
        first = run_cli(capsys, "mult", "--n", "5", "--d", "2", "--format", "json")
        second = run_cli(capsys, "mult", "--n", "5", "--d", "2", "--format", "json")
        assert first == second

    def test_big_integers_become_strings(self):
        assert render_json({"v": 2**63 - 1}) == '{"v":9223372036854775807}'
        assert render_json({"v": 2**63}) == '{"v":"9223372036854775808"}'
        assert_roundtrip(render_json({"v": 2**100}))


class TestSubcommands:
    def test_nests_text(self, capsys):
        code, out, _ = run_cli(capsys, "nests", "--n", "2")
        assert code == 0
        assert out.splitlines()[0] == "n=2 count=2"

    def test_nests_budget(self, capsys):
        code, _, err = run_cli(capsys, "nests", "--n", "8")
        assert code == 2
        assert "budget" in err

    def test_h_poly_text(self, capsys):
        code, out, _ = run_cli(capsys, "h-poly", "--n", "3", "--d", "2")
        assert code == 0
        assert out == "n=3 d=2 h = x + 4*x^2 + x^3\n"

    def test_egf_verify(self, capsys):
        code, out, _ = run_cli(capsys, "egf", "--n", "4", "--d", "2", "--verify")
        assert code == 0
        assert "verified: ok" in out

    def test_egf_json_fields(self, capsys):
        code, out, _ = run_cli(
            capsys, "egf", "--n", "3", "--d", "2", "--format", "json"
        )
        doc = json.loads(out)
        assert doc["h"] == [[], [1], [0, 1], [0, 1, 4, 1]]

    def test_mult_text(self, capsys):
        code, out, _ = run_cli(capsys, "mult", "--n", "3", "--d", "2")
        assert out.splitlines() == [
            "n=3 d=2",
            "m=3: 1",
            "m=2: 3*x",
            "m=1: x + 4*x^2 + x^3",
        ]

    def test_decompose_formal_terms(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "lawson", "--mode", "formal",
            "--n", "2", "--d", "4",
        )
        assert code == 0
        lines = out.strip().splitlines()[1:]
        terms = set()
        for line in lines:
            fields = dict(part.split("=") for part in line.split())
            terms.add((int(fields["m"]), int(fields["shift"]), int(fields["mult"])))
        assert terms == {(2, 0, 1), (1, 1, 1), (1, 2, 1), (1, 3, 1)}

    def test_decompose_ranks_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "2",
            "--mode", "ranks", "--space", "p2", "--p", "1", "--k", "2",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == {"free_rank": 3, "torsion": []}

    def test_decompose_betti_poincare(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "betti", "--n", "2", "--d", "2",
            "--mode", "ranks", "--space", "p2", "--format", "json",
        )
        doc = json.loads(out)
        assert doc["poincare"] == {"coeffs": [1, 0, 3, 0, 4, 0, 3, 0, 1]}

    def test_decompose_db_formal_names(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "db", "--n", "2", "--d", "2",
            "--p", "1", "--k", "2", "--format", "json",
        )
        doc = json.loads(out)
        groups = [t["group"] for t in doc["terms"]]
        assert groups == ["H^2_D(X^2, Z(1))", "H^0_D(X, Z(0))"]

    def test_decompose_latex(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "3",
            "--format", "latex",
        )
        assert code == 0
        assert "\\oplus" in out

    def test_decompose_space_file(self, capsys, tmp_path):
        doc = {
            "name": "line",
            "dim": 1,
            "kind": "lawson",
            "table": [
                {"p": 0, "k": 0, "free_rank": 1},
                {"p": 0, "k": 2, "free_rank": 1},
                {"p": 1, "k": 2, "free_rank": 1},
            ],
            "powers": {
                "2": [
                    {"p": 0, "k": 0, "free_rank": 1},
                    {"p": 0, "k": 2, "free_rank": 2},
                    {"p": 0, "k": 4, "free_rank": 1},
                    {"p": 1, "k": 2, "free_rank": 2},
                    {"p": 1, "k": 4, "free_rank": 2},
                    {"p": 2, "k": 4, "free_rank": 1},
                ]
            },
        }
        path = tmp_path / "line.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "1",
            "--mode", "ranks", "--space", str(path), "--p", "1", "--k", "2",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["value"]["free_rank"] == 2

    def test_malformed_space_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"name": "x", "dim": 1, "kind": "lawson", "oops": []}')
        code, _, err = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "1",
            "--mode", "ranks", "--space", str(path), "--p", "0", "--k", "0",
        )
        assert code == 2
        assert "unknown fields" in err

    def test_missing_space_in_ranks_mode(self, capsys):
        code, _, err = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "2",
            "--mode", "ranks", "--p", "1", "--k", "2",
        )
        assert code == 2
        assert "--space" in err

    def test_invalid_lawson_index(self, capsys):
        code, _, err = run_cli(
            capsys, "decompose", "--theory", "lawson", "--n", "2", "--d", "2",
            "--p", "2", "--k", "1",
        )
        assert code == 2
        assert "k >= 2p" in err

    def test_verify_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--max-n", "3", "--max-d", "2", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["overall"] is True
        assert all(check["pass"] for check in doc["checks"])

    def test_unknown_flag_rejected(self, capsys):
        code, _, err = run_cli(capsys, "h-poly", "--n", "2", "--d", "2", "--wat")
        assert code == 2
        assert "--wat" in err or "unrecognized" in err

    @pytest.mark.parametrize(
        "sub", ["nests", "h-poly", "egf", "mult", "decompose", "verify"]
    )
    def test_help(self, capsys, sub):
        code, out, _ = run_cli(capsys, sub, "--help")
        assert code == 0
        assert "usage" in out.lower()
