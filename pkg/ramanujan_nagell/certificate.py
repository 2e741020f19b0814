import json
from pathlib import Path
from typing import Any, Dict, List, Union

from loguru import logger
from pydantic import ValidationError

from .engine import certificate_body, full_verify
from .exceptions import CertificateError
from .models.certificate import CERTIFICATE_KEYS, Certificate, RawCertificate, ReplayResult
from .utils import canonical_json, digest_of

LoadedCertificate = Union[Certificate, RawCertificate]

MAX_REPORTED_MISMATCHES = 20


def dump_certificate(certificate: Certificate) -> str:
    """Certificate as JSON text: sorted keys, exact decimal integers, trailing newline."""
    return canonical_json(certificate.model_dump(mode="python"))


def write_certificate(certificate: Certificate, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.write_text(dump_certificate(certificate), encoding="utf-8")
    except OSError as e:
        logger.error(f"[Certificate] cannot write {path}: {e}")
        raise CertificateError(f"cannot write certificate to {path}: {e}") from e
    logger.debug(f"[Certificate] wrote {certificate.status} certificate to {path}")
    return path


def diff_paths(expected: Any, actual: Any, prefix: str = "") -> List[str]:
    """Dotted paths where two JSON-like structures differ."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for key in sorted(set(expected) | set(actual), key=str):
            where = f"{prefix}.{key}" if prefix else str(key)
            if key not in expected or key not in actual:
                out.append(where)
            else:
                out.extend(diff_paths(expected[key], actual[key], where))
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return [f"{prefix}[len]"]
        out = []
        for i, (e, a) in enumerate(zip(expected, actual)):
            out.extend(diff_paths(e, a, f"{prefix}[{i}]"))
        return out
    # bool is an int subclass; True must not stand in for 1
    if type(expected) is not type(actual) or expected != actual:
        return [prefix or "<root>"]
    return []


class CertificateChecker:
    """
    Reads certificate files and replays them against a fresh computation.

    Reading is tolerant but exact: a file whose values only validate after
    type coercion is rejected.
    - It NEVER raises on malformed input
    - It NEVER returns None
    - On parse failure it returns RawCertificate with the original data
    """
    def __init__(self, workers: int = 1) -> None:
        self.workers = workers

    def parse(self, payload: Any) -> LoadedCertificate:
        try:
            if not isinstance(payload, dict):
                raise ValueError(f"certificate must be a JSON object, got {type(payload).__name__}")
            keys = set(payload)
            if keys != set(CERTIFICATE_KEYS):
                missing = sorted(set(CERTIFICATE_KEYS) - keys)
                extra = sorted(keys - set(CERTIFICATE_KEYS))
                raise ValueError(f"top-level keys mismatch: missing={missing} extra={extra}")
            certificate = Certificate.model_validate(payload)
            # lax validation coerces "181" and 181.0 to 181; the file must already hold the canonical values
            altered = diff_paths(json.loads(dump_certificate(certificate)), payload)
            if altered:
                raise ValueError(f"non-canonical values at {altered[:MAX_REPORTED_MISMATCHES]}")
            return certificate
        except ValidationError as e:
            logger.warning(f"[Certificate] validation failed: {e}")
            return RawCertificate(raw_payload=payload, parse_error=str(e))
        except Exception as e:
            logger.warning(f"[Certificate] unreadable certificate: {e}")
            return RawCertificate(raw_payload=payload, parse_error=str(e))

    def load(self, path: Union[str, Path]) -> LoadedCertificate:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            logger.error(f"[Certificate] cannot read {path}: {e}")
            return RawCertificate(raw_payload=None, parse_error=str(e))
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            logger.warning(f"[Certificate] {path} is not JSON: {e}")
            return RawCertificate(raw_payload=text, parse_error=str(e))
        return self.parse(payload)

    def replay(self, loaded: LoadedCertificate) -> ReplayResult:
        """
        Recompute everything from the recorded parameters and compare value by
        value. Any difference, a stale digest or an unparseable file is a FAIL.
        """
        if isinstance(loaded, RawCertificate):
            return ReplayResult(status="FAIL", parse_error=loaded.parse_error)

        mismatches: List[str] = []
        recorded_body = certificate_body(loaded)
        if digest_of(recorded_body) != loaded.meta.digest:
            mismatches.append("meta.digest")

        fresh = full_verify(loaded.meta.parameters, workers=self.workers)
        expected: Dict[str, Any] = json.loads(dump_certificate(fresh))
        actual: Dict[str, Any] = json.loads(dump_certificate(loaded))
        mismatches.extend(diff_paths(expected, actual))

        status = "PASS" if not mismatches and fresh.passed else "FAIL"
        if mismatches:
            logger.warning(f"[Certificate] replay mismatches: {mismatches[:MAX_REPORTED_MISMATCHES]}")
        return ReplayResult(
            status=status,
            mismatches=mismatches[:MAX_REPORTED_MISMATCHES],
            recomputed={"status": fresh.status, "digest": fresh.meta.digest},
        )

    def check_file(self, path: Union[str, Path]) -> ReplayResult:
        return self.replay(self.load(path))


def read_certificate(path: Union[str, Path]) -> LoadedCertificate:
    return CertificateChecker().load(path)


def replay_certificate(path: Union[str, Path], workers: int = 1) -> ReplayResult:
    return CertificateChecker(workers=workers).check_file(path)
