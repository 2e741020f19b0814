import io
import json
import sys

import pytest
from loguru import logger

from ramanujan_nagell import Certificate, CertificateChecker
from ramanujan_nagell.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_parser, parse_config, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestSearch:

    def test_text(self):
        code, out, _ = invoke("search", "--max-n", "15")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 5
        assert lines[-1] == "(181, 15)"

    def test_json(self):
        code, out, _ = invoke("search", "--max-n", "1000", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["n_max"] == 1000
        assert [(s["x"], s["n"]) for s in payload["solutions"]] == [(1, 3), (3, 4), (5, 5), (11, 7), (181, 15)]

    def test_nothing_found(self):
        code, out, _ = invoke("search", "--max-n", "2")
        assert code == EXIT_OK
        assert out == ""

    @pytest.mark.parametrize("bad", ["0", "-4", "ten"])
    def test_bad_bound(self, bad):
        code, _, err = invoke("search", "--max-n", bad)
        assert code == EXIT_USAGE
        assert "--max-n" in err

    def test_missing_bound(self):
        code, _, err = invoke("search")
        assert code == EXIT_USAGE
        assert "--max-n" in err


class TestResidues:

    def test_text(self):
        assert invoke("residues") == (EXIT_OK, "3 5 13\n", "")

    def test_json(self):
        code, out, _ = invoke("residues", "--format", "json")
        assert json.loads(out) == {"modulus": 42, "residues": [3, 5, 13]}


class TestTheta:

    def test_seven_fails(self):
        code, out, _ = invoke("theta", "--m", "7")
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "theta equation: false"
        assert "B_m = 448" in out

    def test_thirteen_holds(self):
        code, out, _ = invoke("theta", "--m", "13")
        assert code == EXIT_OK
        assert "theta^m - theta'^m = (1, -2) = -1*sqrt(-7)" in out
        assert "trace = -181" in out
        assert out.splitlines()[-1] == "theta equation: true"

    def test_json(self):
        code, out, _ = invoke("theta", "--m", "3", "--format", "json")
        payload = json.loads(out)
        assert payload == {"m": 3, "difference": [1, -2], "b_m": -4, "s": -1, "trace": -5, "holds": True}

    def test_even_m_is_usage_error(self):
        code, _, err = invoke("theta", "--m", "4")
        assert code == EXIT_USAGE
        assert "usage error" in err


class TestValuation:

    def test_p_and_n(self):
        assert invoke("valuation", "--p", "7", "--n", "2058") == (EXIT_OK, "v_7(2058) = 3\n", "")

    def test_zero_is_infinite(self):
        code, out, _ = invoke("valuation", "--p", "7", "--n", "0", "--format", "json")
        assert json.loads(out) == {"p": 7, "n": 0, "valuation": "inf"}

    def test_b_sum(self):
        assert invoke("valuation", "--b-sum", "7") == (EXIT_OK, "v_7(B_7) = 1, v_7(7) = 1\n", "")

    def test_b_sum_json(self):
        code, out, _ = invoke("valuation", "--b-sum", "42", "--format", "json")
        assert json.loads(out) == {"d": 42, "valuations": {"b": 1, "d": 1}, "equal": True}

    def test_composite_p(self):
        code, _, err = invoke("valuation", "--p", "4", "--n", "8")
        assert code == EXIT_USAGE
        assert "not prime" in err

    @pytest.mark.parametrize(
        "argv", [("valuation",), ("valuation", "--p", "7"), ("valuation", "--b-sum", "7", "--p", "7", "--n", "1")]
    )
    def test_missing_or_conflicting_flags(self, argv):
        code, _, err = invoke(*argv)
        assert code == EXIT_USAGE
        assert "--" in err


class TestVerifyAndCheck:

    @pytest.fixture(scope="class")
    def written(self, tmp_path_factory):
        path = tmp_path_factory.mktemp("cli") / "certificate.json"
        code, out, err = invoke("verify", "--max-n", "200", "--k-max", "2", "--d-sweep", "40", "--out", str(path))
        return path, code, out, err

    def test_verify_writes_passing_certificate(self, written):
        path, code, out, err = written
        assert code == EXIT_OK
        assert err == ""
        assert out.splitlines()[0] == "status: PASS"
        assert f"certificate: {path}" in out
        assert json.loads(path.read_text())["status"] == "PASS"

    def test_check_replays(self, written):
        path = written[0]
        assert invoke("check", "--in", str(path)) == (EXIT_OK, "status: PASS\n", "")

    def test_check_json(self, written):
        code, out, _ = invoke("check", "--in", str(written[0]), "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["status"] == "PASS"
        assert payload["mismatches"] == []

    def test_check_tampered(self, written, tmp_path):
        payload = json.loads(written[0].read_text())
        payload["theta_witnesses"][0]["trace"] += 1
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(payload))
        code, out, err = invoke("check", "--in", str(tampered))
        assert code == EXIT_FAIL
        assert out == "status: FAIL\n"
        assert "verification FAIL: meta.digest" in err

    def test_check_missing_file(self, tmp_path):
        code, _, err = invoke("check", "--in", str(tmp_path / "none.json"))
        assert code == EXIT_FAIL
        assert "verification FAIL" in err

    def test_verify_unwritable_out(self, tmp_path, monkeypatch):
        from ramanujan_nagell import cli

        monkeypatch.setattr(cli, "full_verify", _quick_verify)
        code, _, err = invoke("verify", "--max-n", "20", "--out", str(tmp_path / "a" / "b.json"))
        assert code == EXIT_FAIL
        assert "cannot write certificate" in err

    def test_verify_without_out_prints_json(self, monkeypatch):
        from ramanujan_nagell import cli

        monkeypatch.setattr(cli, "full_verify", _quick_verify)
        code, out, _ = invoke("verify", "--max-n", "20")
        assert code == EXIT_OK
        assert isinstance(CertificateChecker().parse(json.loads(out)), Certificate)


def _quick_verify(cfg):
    from ramanujan_nagell import VerifyConfig, full_verify

    return full_verify(
        VerifyConfig(n_max=20, k_max=1, d_sweep=5, trace_max=20, trace_pow_max=10, sign_max=5, lte_k_max=2, shift_d_max=2)
    )


class TestUsage:

    def test_no_command(self):
        code, _, err = invoke()
        assert code == EXIT_USAGE
        assert "usage error" in err

    def test_unknown_flag(self):
        code, _, err = invoke("residues", "--verbose")
        assert code == EXIT_USAGE
        assert "--verbose" in err

    def test_unknown_command(self):
        assert invoke("prove")[0] == EXIT_USAGE

    def test_help(self, capsys):
        code, _, _ = invoke("--help")
        assert code == EXIT_OK
        assert "ramanujan-nagell" in capsys.readouterr().out

    def test_parse_config(self):
        cfg = parse_config(["verify", "--max-n", "50", "--format", "json"])
        assert (cfg.command, cfg.n_max, cfg.k_max, cfg.format) == ("verify", 50, 50, "json")

    def test_every_subcommand_has_format(self):
        parser = build_parser()
        for argv in (["search", "--max-n", "3"], ["residues"], ["theta", "--m", "3"], ["valuation", "--b-sum", "1"],
                     ["verify"], ["check", "--in", "x"]):
            assert parser.parse_args(argv + ["--format", "json"]).format == "json"

    def test_output_is_deterministic(self):
        assert invoke("theta", "--m", "41", "--format", "json") == invoke("theta", "--m", "41", "--format", "json")


class TestProcessState:

    def test_caller_sinks_survive(self):
        messages = []
        sink = logger.add(messages.append, level="WARNING", format="{message}")
        try:
            invoke("residues")
            logger.warning("[Caller] still attached")
        finally:
            logger.remove(sink)
        assert any("still attached" in m for m in messages)

    def test_err_sink_is_detached_after_run(self):
        out, err = io.StringIO(), io.StringIO()
        run(["residues"], out=out, err=err)
        logger.warning("[Caller] after the run")
        assert err.getvalue() == ""

    def test_int_string_limit_restored(self):
        before = sys.get_int_max_str_digits()
        invoke("valuation", "--b-sum", "42")
        assert sys.get_int_max_str_digits() == before
