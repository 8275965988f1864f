import json
from pathlib import Path

import pytest

from catlab.cli import main, parse_context, parse_state


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_comma_separated(self):
        assert parse_state("0.3,0.7").dim == 2

    def test_json_form(self):
        v = parse_state('{"p": [0.25, 0.75]}')
        assert v.entries[1] == 0.75

    def test_json_requires_p_key(self):
        with pytest.raises(ValueError):
            parse_state('{"q": [1.0]}')

    def test_context_forms(self):
        assert parse_context('{"degenerate": 4}', 3).dim == 4
        ctx = parse_context('{"energies": [0.0, 1.0], "beta": 2.0}', 2)
        assert ctx.beta == 2.0
        assert parse_context(None, 5).dim == 5


class TestCheck:
    def test_majorize_true(self, capsys):
        code, out, _ = run(capsys, "check", "majorize", "--p", "1,0", "--q", "0.5,0.5")
        assert code == 0
        assert json.loads(out)["result"] is True

    def test_majorize_incomparable_anchor(self, capsys):
        code, out, _ = run(capsys, "check", "majorize",
                           "--p", "0.65,0.2,0.15", "--q", "0.5,0.4,0.1")
        assert code == 1
        payload = json.loads(out)
        assert payload["result"] is False and payload["margin"] < 0

    def test_tmajorize_with_context(self, capsys):
        code, out, _ = run(capsys, "check", "tmajorize",
                           "--p", "1,0", "--q", "0.8,0.2",
                           "--ctx", '{"energies": [0.0, 1.0], "beta": 1.0}')
        assert code == 0
        assert json.loads(out)["result"] is True

    def test_emitted_state_json_round_trips(self, capsys):
        code, out, _ = run(capsys, "catalysis", "second-laws",
                           "--p", "0.65,0.2,0.15", "--q", "0.5,0.4,0.1")
        assert code == 0
        payload = json.loads(out)
        again = parse_state(json.dumps(payload["inputs"]["p"]))
        assert again.dim == 3


class TestCatalysis:
    def test_second_laws_anchor(self, capsys):
        code, out, _ = run(capsys, "catalysis", "second-laws",
                           "--p", "0.65,0.2,0.15", "--q", "0.5,0.4,0.1")
        assert code == 0
        payload = json.loads(out)
        assert payload["result"] is True and payload["margin"] > 0

    def test_min_k_negative_decision(self, capsys):
        code, out, _ = run(capsys, "catalysis", "min-k",
                           "--p", "0.65,0.2,0.15", "--q", "0.5,0.4,0.1",
                           "--k-max", "4")
        assert code == 1
        assert json.loads(out)["k"] is None

    def test_duan_cap_exit_code(self, capsys):
        code, _, err = run(capsys, "catalysis", "duan",
                           "--p", "0.65,0.2,0.15", "--q", "0.5,0.4,0.1",
                           "--k", "30")
        assert code == 3
        assert json.loads(err)["error"] == "resource-cap"

    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "catalysis", "bounds", "--d-s", "3", "--d-c", "256")
        assert code == 0
        assert json.loads(out)["embezzlement_bound"] == pytest.approx(2 / 17)

    def test_bounds_with_conversion(self, capsys):
        code, out, _ = run(capsys, "catalysis", "bounds", "--d-s", "3", "--d-c", "4",
                           "--source", "0.65,0.2,0.15", "--target", "0.5,0.4,0.1",
                           "--n", "100", "--kappa", "0.5")
        payload = json.loads(out)
        assert code == 0
        assert payload["conversion"]["delta_bound"] == pytest.approx(2.718281828 ** -10, rel=1e-6)


class TestConvexsplit:
    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "convexsplit", "verify",
                           "--rho", "0.6,0.4", "--sigma", "0.5,0.5", "--m-max", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "m,empirical,bound,ratio"
        assert len(lines) == 5

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "convexsplit", "verify", "--json",
                           "--rho", "0.6,0.4", "--sigma", "0.5,0.5", "--m-max", "3")
        assert code == 0
        assert len(json.loads(out)["rows"]) == 3


class TestDilate:
    def test_verified(self, capsys):
        code, out, _ = run(capsys, "dilate",
                           "--channel", '[["5/6","1/3"],["1/6","2/3"]]',
                           "--gibbs", '["2/3","1/3"]')
        assert code == 0
        payload = json.loads(out)
        assert payload["verified"] is True and payload["shell_size"] == 9

    def test_refuses_non_preserving(self, capsys):
        code, _, err = run(capsys, "dilate",
                           "--channel", '[["1","1"],["0","0"]]',
                           "--gibbs", '["1/2","1/2"]')
        assert code == 2
        assert "usage" in err


class TestExp:
    def test_missing_config(self, capsys, tmp_path):
        code, _, err = run(capsys, "exp", "fig2", "--config", "missing.json",
                           "--out", str(tmp_path), "--seed", "1")
        assert code == 2

    def test_seed_is_mandatory(self, capsys, tmp_path):
        code = main(["exp", "fig3", "--config", "x.json", "--out", str(tmp_path)])
        capsys.readouterr()
        assert code == 2

    def test_runs_and_writes_only_in_out(self, capsys, tmp_path):
        cfg = {"d_S": 3, "N_S": 40, "k_max": 2}
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        out_dir = tmp_path / "results"
        code, out, _ = run(capsys, "exp", "fig3", "--config", str(cfg_path),
                           "--out", str(out_dir), "--seed", "11")
        assert code == 0
        summary = json.loads(out)
        assert summary["config"]["seed"] == 11
        produced = {p.name for p in out_dir.iterdir()}
        assert produced == {"fig3.csv", "fig3_summary.json"}


class TestPresets:
    def test_list_names(self, capsys):
        code, out, _ = run(capsys, "presets", "list")
        assert code == 0
        names = set(json.loads(out))
        assert names == {"fig2", "fig3", "fig4", "fig5", "fig6",
                         "appendix-d4", "appendix-d5"}

    def test_show(self, capsys):
        code, out, _ = run(capsys, "presets", "show", "fig2")
        assert code == 0
        assert json.loads(out)["experiment"] == "fig2"

    def test_show_unknown(self, capsys):
        code, _, err = run(capsys, "presets", "show", "nope")
        assert code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
