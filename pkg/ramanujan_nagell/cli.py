import argparse
import sys
from typing import List, Optional, TextIO

from loguru import logger
from pydantic import BaseModel, ValidationError

from .binomial import valuation_lemma_B
from .certificate import CertificateChecker, dump_certificate, write_certificate
from .engine import brute_force_search, full_verify, residue_classes_mod_42, verify_theta_equation
from .exceptions import CertificateError, PreconditionError, UsageError
from .models import (
    BinomialValuationOutput,
    CliConfig,
    ResiduesOutput,
    SearchOutput,
    ThetaOutput,
    ValuationOutput,
    ValuationPair,
    VerifyConfig,
)
from .padic import v_p
from .ring import theta
from .utils import canonical_json, unbounded_int_strings

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ramanujan-nagell", description="Verify the proof skeleton of x^2 + 7 = 2^n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--format", choices=["text", "json"], default="text")
        return p

    search = with_format(sub.add_parser("search", help="brute-force solution pairs"))
    search.add_argument("--max-n", dest="n_max", type=_positive_int, required=True)

    with_format(sub.add_parser("residues", help="residue classes of m mod 42"))

    theta_cmd = with_format(sub.add_parser("theta", help="theta^m - theta'^m diagnostics"))
    theta_cmd.add_argument("--m", dest="m", type=_positive_int, required=True)

    valuation = with_format(sub.add_parser("valuation", help="p-adic valuations"))
    valuation.add_argument("--p", dest="p", type=_positive_int)
    valuation.add_argument("--n", dest="n", type=int)
    valuation.add_argument("--b-sum", dest="b_sum", type=_positive_int)

    verify = with_format(sub.add_parser("verify", help="run the full verification and write a certificate"))
    verify.add_argument("--max-n", dest="n_max", type=_positive_int, default=1000)
    verify.add_argument("--k-max", dest="k_max", type=_positive_int, default=50)
    verify.add_argument("--d-sweep", dest="d_sweep", type=_positive_int, default=500)
    verify.add_argument("--out", dest="out")

    check = with_format(sub.add_parser("check", help="replay an existing certificate"))
    check.add_argument("--in", dest="in_path", required=True)
    return parser


def parse_config(argv: List[str]) -> CliConfig:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if v is not None}
    try:
        return CliConfig(**fields)
    except ValidationError as e:
        raise UsageError(str(e))


def _emit(model: BaseModel, out: TextIO) -> None:
    out.write(canonical_json(model.model_dump(mode="python")))


def _search(cfg: CliConfig, out: TextIO) -> int:
    solutions = brute_force_search(cfg.n_max)
    if cfg.format == "json":
        _emit(SearchOutput(n_max=cfg.n_max, solutions=solutions), out)
    else:
        for s in solutions:
            out.write(f"({s.x}, {s.n})\n")
    return EXIT_OK


def _residues(cfg: CliConfig, out: TextIO) -> int:
    residues = residue_classes_mod_42()
    if cfg.format == "json":
        _emit(ResiduesOutput(residues=residues), out)
    else:
        out.write(" ".join(str(r) for r in residues) + "\n")
    return EXIT_OK


def _theta(cfg: CliConfig, out: TextIO) -> int:
    witness = verify_theta_equation(cfg.m)
    power = theta() ** cfg.m
    difference = power - power.conj()
    b_m, s = witness.b_m, witness.s
    report = ThetaOutput(
        m=cfg.m, difference=difference.coords(), b_m=b_m, s=s, trace=witness.trace, holds=witness.holds
    )
    if cfg.format == "json":
        _emit(report, out)
    else:
        out.write(f"m = {report.m}\n")
        out.write(f"theta^m - theta'^m = ({difference.a}, {difference.b}) = {s}*sqrt(-7)\n")
        out.write(f"B_m = {b_m}\n")
        out.write(f"trace = {report.trace}\n")
        out.write(f"theta equation: {'true' if report.holds else 'false'}\n")
    return EXIT_OK


def _valuation(cfg: CliConfig, out: TextIO) -> int:
    if cfg.b_sum is not None:
        if cfg.p is not None or cfg.n is not None:
            raise UsageError("argument --b-sum: not allowed with --p/--n")
        v_b, v_d = valuation_lemma_B(cfg.b_sum)
        if cfg.format == "json":
            _emit(BinomialValuationOutput(d=cfg.b_sum, valuations=ValuationPair(b=v_b, d=v_d), equal=v_b == v_d), out)
        else:
            out.write(f"v_7(B_{cfg.b_sum}) = {v_b}, v_7({cfg.b_sum}) = {v_d}\n")
        return EXIT_OK
    if cfg.p is None or cfg.n is None:
        raise UsageError("argument --p/--n: both are required unless --b-sum is given")
    value = v_p(cfg.p, cfg.n)
    if cfg.format == "json":
        _emit(ValuationOutput(p=cfg.p, n=cfg.n, valuation=value), out)
    else:
        out.write(f"v_{cfg.p}({cfg.n}) = {value}\n")
    return EXIT_OK


def _verify(cfg: CliConfig, out: TextIO, err: TextIO) -> int:
    certificate = full_verify(VerifyConfig(n_max=cfg.n_max, k_max=cfg.k_max, d_sweep=cfg.d_sweep))
    if cfg.out:
        write_certificate(certificate, cfg.out)
    if cfg.format == "json" or not cfg.out:
        out.write(dump_certificate(certificate))
    else:
        out.write(f"status: {certificate.status}\n")
        for s in certificate.solutions:
            out.write(f"solution: x = +-{s.x}, n = {s.n} ({s.route})\n")
        out.write(f"certificate: {cfg.out}\n")
    if not certificate.passed:
        err.write(f"verification FAIL: {', '.join(certificate.meta.failed_checks)}\n")
        return EXIT_FAIL
    return EXIT_OK


def _check(cfg: CliConfig, out: TextIO, err: TextIO) -> int:
    result = CertificateChecker().check_file(cfg.in_path)
    if cfg.format == "json":
        _emit(result, out)
    else:
        out.write(f"status: {result.status}\n")
    if not result.passed:
        reason = result.parse_error or ", ".join(result.mismatches) or "recomputed certificate did not pass"
        err.write(f"verification FAIL: {reason}\n")
        return EXIT_FAIL
    return EXIT_OK


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)

    sink = logger.add(err, level="WARNING", format="{level}: {message}")
    try:
        with unbounded_int_strings():
            return _dispatch(argv, out, err)
    finally:
        logger.remove(sink)


def _dispatch(argv: List[str], out: TextIO, err: TextIO) -> int:
    try:
        cfg = parse_config(argv)
        logger.debug(f"[CLI] {cfg.command} {cfg.model_dump(exclude_none=True)}")
        if cfg.command == "search":
            return _search(cfg, out)
        elif cfg.command == "residues":
            return _residues(cfg, out)
        elif cfg.command == "theta":
            return _theta(cfg, out)
        elif cfg.command == "valuation":
            return _valuation(cfg, out)
        elif cfg.command == "verify":
            return _verify(cfg, out, err)
        elif cfg.command == "check":
            return _check(cfg, out, err)
        raise UsageError(f"unknown command {cfg.command}")
    except (UsageError, PreconditionError) as e:
        err.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except CertificateError as e:
        err.write(f"verification FAIL: {e}\n")
        return EXIT_FAIL
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK


def main() -> None:
    # stderr carries only the run's warnings
    logger.remove()
    sys.exit(run())
