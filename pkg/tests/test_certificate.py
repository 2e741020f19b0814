"""
Certificate files: writing, tolerant reading and replay.

The reader's guarantees mirror the engine's:
- reading NEVER raises on malformed input and NEVER returns None
- an unreadable file comes back as RawCertificate with the original data
- replay is PASS only when every recomputed value matches the file
"""
import json
from pathlib import Path

import pytest

from ramanujan_nagell import (
    Certificate,
    CertificateChecker,
    CertificateError,
    RawCertificate,
    dump_certificate,
    full_verify,
    read_certificate,
    replay_certificate,
    write_certificate,
)
from ramanujan_nagell.certificate import diff_paths
from ramanujan_nagell.models import CERTIFICATE_KEYS

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_fixture(name: str):
    """Load a JSON fixture by name."""
    with open(FIXTURES_DIR / name, "r") as f:
        return json.load(f)


@pytest.fixture(scope="module")
def certificate(small_config):
    return full_verify(small_config)


@pytest.fixture
def certificate_path(certificate, tmp_path):
    return write_certificate(certificate, tmp_path / "certificate.json")


@pytest.fixture
def checker():
    return CertificateChecker()


def tamper(path: Path, edit) -> Path:
    payload = json.loads(path.read_text())
    edit(payload)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    return path


# =============================================================================
# 1. WRITING
# =============================================================================

class TestWriteCertificate:

    def test_top_level_keys(self, certificate_path):
        payload = json.loads(certificate_path.read_text())
        assert set(payload) == set(CERTIFICATE_KEYS)
        assert payload["status"] == "PASS"

    def test_sorted_and_newline_terminated(self, certificate, certificate_path):
        text = certificate_path.read_text()
        assert text.endswith("\n")
        assert text == dump_certificate(certificate)
        assert list(json.loads(text)) == sorted(CERTIFICATE_KEYS)

    def test_output_is_byte_identical_across_runs(self, small_config, certificate):
        assert dump_certificate(full_verify(small_config)) == dump_certificate(certificate)

    def test_integers_are_exact(self, certificate_path):
        payload = json.loads(certificate_path.read_text())
        traces = {w["m"]: w["trace"] for w in payload["theta_witnesses"]}
        assert traces[13] == -181
        assert isinstance(traces[41], int)

    def test_valuations_are_plain_integers(self, certificate_path):
        payload = json.loads(certificate_path.read_text())
        report = payload["uniqueness"][0]
        assert report["l"] == 1
        assert report["v_lhs"] == 1

    def test_unwritable_path_raises(self, certificate, tmp_path):
        with pytest.raises(CertificateError):
            write_certificate(certificate, tmp_path / "missing" / "dir" / "certificate.json")


# =============================================================================
# 2. TOLERANT READING
# =============================================================================

class TestReadCertificate:

    def test_round_trip(self, certificate, certificate_path):
        loaded = read_certificate(certificate_path)
        assert isinstance(loaded, Certificate)
        assert loaded == certificate

    @pytest.mark.parametrize(
        "fixture",
        [
            "empty_certificate.json",
            "malformed_random.json",
            "missing_status.json",
            "wrong_status_value.json",
            "top_level_list.json",
        ],
    )
    def test_malformed_payload_returns_fallback(self, checker, fixture):
        payload = load_fixture(fixture)
        result = checker.parse(payload)
        assert isinstance(result, RawCertificate), f"Expected RawCertificate, got {type(result).__name__}"
        assert result.raw_payload == payload
        assert result.parse_error

    def test_truncated_json_keeps_text(self, checker):
        path = FIXTURES_DIR / "truncated_certificate.json"
        result = checker.load(path)
        assert isinstance(result, RawCertificate)
        assert result.raw_payload == path.read_text()

    def test_missing_file(self, checker, tmp_path):
        result = checker.load(tmp_path / "nope.json")
        assert isinstance(result, RawCertificate)
        assert result.raw_payload is None

    def test_extra_top_level_key(self, checker, certificate):
        payload = json.loads(dump_certificate(certificate))
        payload["comment"] = "hand edited"
        result = checker.parse(payload)
        assert isinstance(result, RawCertificate)
        assert "comment" in result.parse_error

    def test_inconsistent_uniqueness_report(self, checker, certificate):
        payload = json.loads(dump_certificate(certificate))
        payload["uniqueness"][0]["contradiction"] = False
        assert isinstance(checker.parse(payload), RawCertificate)

    def test_coerced_value_is_rejected(self, checker, certificate):
        payload = json.loads(dump_certificate(certificate))
        payload["meta"]["parameters"]["n_max"] = str(payload["meta"]["parameters"]["n_max"])
        result = checker.parse(payload)
        assert isinstance(result, RawCertificate)
        assert "meta.parameters.n_max" in result.parse_error

    def test_fail_certificate_with_null_step(self, checker, small_config, monkeypatch, tmp_path):
        from ramanujan_nagell import InternalInconsistencyError, engine

        def broken():
            raise InternalInconsistencyError("even case did not reduce to a single solution")

        monkeypatch.setattr(engine, "even_case", broken)
        failing = full_verify(small_config)
        path = write_certificate(failing, tmp_path / "failing.json")
        assert json.loads(path.read_text())["even_case"] is None
        assert checker.load(path) == failing
        result = checker.check_file(path)
        assert result.status == "FAIL"
        assert result.mismatches == []

    @pytest.mark.parametrize("payload", [None, 42, "PASS", [], {"status": "PASS"}])
    def test_never_raises(self, checker, payload):
        result = checker.parse(payload)
        assert result is not None
        assert isinstance(result, RawCertificate)


# =============================================================================
# 3. REPLAY
# =============================================================================

class TestReplay:

    def test_untouched_file_passes(self, certificate_path):
        result = replay_certificate(certificate_path)
        assert result.status == "PASS"
        assert result.mismatches == []
        assert result.passed

    def test_altered_trace_fails(self, certificate_path):
        def edit(payload):
            for witness in payload["theta_witnesses"]:
                if witness["m"] == 13:
                    witness["trace"] = -180
                    witness["abs_trace"] = 180

        result = replay_certificate(tamper(certificate_path, edit))
        assert result.status == "FAIL"
        assert "meta.digest" in result.mismatches
        assert any(path.endswith(".trace") for path in result.mismatches)

    def test_altered_solution_fails(self, certificate_path):
        def edit(payload):
            payload["solutions"][-1]["x"] = 182

        result = replay_certificate(tamper(certificate_path, edit))
        assert result.status == "FAIL"
        assert "solutions[4].x" in result.mismatches

    def test_altered_status_fails(self, certificate_path):
        # the digest does not cover status, the recomputation does
        result = replay_certificate(tamper(certificate_path, lambda p: p.update(status="FAIL")))
        assert result.status == "FAIL"
        assert result.mismatches == ["status"]

    def test_altered_parameters_fail(self, certificate_path):
        def edit(payload):
            payload["meta"]["parameters"]["k_max"] = 2

        result = replay_certificate(tamper(certificate_path, edit))
        assert result.status == "FAIL"
        assert "meta.digest" in result.mismatches

    def test_altered_count_fails(self, certificate_path):
        def edit(payload):
            payload["sweeps"]["lte_agreement"]["checked"] = True

        assert replay_certificate(tamper(certificate_path, edit)).status == "FAIL"

    def test_integer_written_as_string_fails(self, certificate_path):
        def edit(payload):
            payload["solutions"][-1]["x"] = "181"

        result = replay_certificate(tamper(certificate_path, edit))
        assert result.status == "FAIL"
        assert "solutions[4].x" in result.parse_error

    def test_integer_written_as_float_fails(self, certificate_path):
        def edit(payload):
            for witness in payload["theta_witnesses"]:
                if witness["m"] == 13:
                    witness["abs_trace"] = 181.0

        result = replay_certificate(tamper(certificate_path, edit))
        assert result.status == "FAIL"
        assert ".abs_trace" in result.parse_error

    def test_malformed_file_fails_with_reason(self):
        result = replay_certificate(FIXTURES_DIR / "missing_status.json")
        assert result.status == "FAIL"
        assert result.parse_error

    def test_recomputed_summary(self, certificate, certificate_path):
        result = CertificateChecker().check_file(certificate_path)
        assert result.recomputed == {"status": "PASS", "digest": certificate.meta.digest}


class TestDiffPaths:

    def test_identical(self):
        assert diff_paths({"a": [1, {"b": 2}]}, {"a": [1, {"b": 2}]}) == []

    def test_nested(self):
        assert diff_paths({"a": [1, {"b": 2}]}, {"a": [1, {"b": 3}]}) == ["a[1].b"]

    def test_length_and_keys(self):
        assert diff_paths({"a": [1], "b": 1}, {"a": [1, 2], "c": 1}) == ["a[len]", "b", "c"]

    def test_type_strict(self):
        assert diff_paths(1, True) == ["<root>"]
        assert diff_paths(1, 1.0) == ["<root>"]
