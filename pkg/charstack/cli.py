"""Command-line front end.

Every computation and verification is a subcommand. Reports go to stdout
(or to ``--out``) in the chosen format; status lines and progress bars go
to stderr. The exit code is 0 when every fatal check passes,
``EXIT_CHECK_FAILED`` when one fails and ``EXIT_USAGE`` for invalid input.

Partition tuples are written ``"2,1|3"``: components separated by ``|``,
parts by commas. Eigenvalue lists for the punctured oracle use the same
layout, one class per component, with repeated eigenvalues listed repeatedly.
"""
import argparse
import dataclasses
import sys
from typing import Any, Callable, Dict, Optional, Sequence

from clikit.io import ConsoleIO

import charstack
from charstack import nonorient, oracle, punctured
from charstack.common import DEFAULT_CUTOFF, HOOK_BOUND, MACDONALD_BOUND, BudgetExceeded, IntegralityViolation
from charstack.partitions import Partition, PartitionTuple
from charstack.report import Report, Result, merge_reports
from charstack.symfun import macdonald_modified

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("json", "csv", "latex", "text")
ORACLES = ("nonorient", "punctured", "orbits", "correspondence")
SUITES = (
    "closed_forms",
    "e_series_consistency",
    "maintheo",
    "mseries_agreement",
    "leading_coefficients",
    "integrality",
    "parity",
    "denominators",
)
VERIFICATIONS = tuple(nonorient.IDENTITIES) + tuple(punctured.CONJECTURES) + SUITES

# fields each subcommand needs
REQUIRED = {
    "involutions": ("nmax",),
    "mseries": ("rho", "nmax"),
    "ecount-nonorient": ("rho", "n"),
    "hh": ("r", "k"),
    "ecount-punctured": ("r", "k", "mu"),
    "mixed-poincare": ("r", "k", "mu"),
    "verify": ("target",),
    "oracle": ("target",),
    "macdonald": ("lam",),
}


class UsageError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one invocation.

    Raises:
        UsageError: naming the first invalid or missing field.
    """

    subcommand: str
    target: Optional[str] = None
    rho: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    q: Optional[int] = None
    nmax: Optional[int] = None
    degree: Optional[int] = None
    bound: Optional[int] = None
    dmax: Optional[int] = None
    mu: Optional[str] = None
    lam: Optional[str] = None
    eigenvalues: Optional[str] = None
    all_mu: bool = False
    quick: bool = False
    seed: int = 0
    output_format: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if self.subcommand not in REQUIRED:
            raise UsageError(f"Unknown subcommand `{self.subcommand}`.")
        if self.output_format not in FORMATS:
            raise UsageError(f"`--format` must be one of {', '.join(FORMATS)}, found `{self.output_format}`.")
        for name in ("r", "k", "n", "q", "nmax", "degree", "bound", "dmax"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"`--{name}` must be positive, found `{value}`.")
        if self.rho is not None and self.rho < -1:
            raise UsageError(f"`--rho` must be at least -1, found `{self.rho}`.")
        if self.seed < 0:
            raise UsageError(f"`--seed` must be non-negative, found `{self.seed}`.")
        for name in REQUIRED[self.subcommand]:
            if getattr(self, name) is None:
                raise UsageError(f"`{self.subcommand}` needs `--{name}`.")
        if self.subcommand == "hh":
            if self.all_mu and self.n is None:
                raise UsageError("`hh --all` needs `--n`.")
            if not self.all_mu and self.mu is None:
                raise UsageError("`hh` needs `--mu` or `--all`.")
        if self.mu is not None:
            try:
                mu = PartitionTuple.parse(self.mu)
            except ValueError as exc:
                raise UsageError(f"`--mu {self.mu}` is not a partition tuple: {exc}")
            if self.k is not None and mu.k != self.k:
                raise UsageError(f"`--mu {self.mu}` has {mu.k} components, expected k=`{self.k}`.")
        if self.subcommand == "verify" and self.target not in VERIFICATIONS + ("all",):
            raise UsageError(
                f"Unknown verification `{self.target}`; expected `all` or one of {', '.join(VERIFICATIONS)}."
            )
        if self.subcommand == "oracle":
            self._check_oracle()

    def _check_oracle(self):
        if self.target not in ORACLES:
            raise UsageError(f"Unknown oracle `{self.target}`; expected one of {', '.join(ORACLES)}.")
        if self.target == "nonorient":
            given = [name for name in ("n", "r", "q") if getattr(self, name) is not None]
            if given and len(given) != 3:
                raise UsageError("A single `oracle nonorient` case needs all of `--n`, `--r` and `--q`.")
        if self.target == "punctured" and self.eigenvalues is not None:
            if self.r is None or self.q is None:
                raise UsageError("`oracle punctured --eigenvalues` needs `--r` and `--q`.")
            spec = punctured.ClassSpec.parse(self.eigenvalues, self.q)
            for name, value in (("k", spec.k), ("n", spec.n)):
                given = getattr(self, name)
                if given is not None and given != value:
                    raise UsageError(
                        f"`--eigenvalues {self.eigenvalues}` gives {name}={value}, found `--{name} {given}`."
                    )
        if self.target == "correspondence" and (self.n is None) != (self.q is None):
            raise UsageError("A single `oracle correspondence` case needs both `--n` and `--q`.")

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> "RunConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{key: value for key, value in vars(namespace).items() if key in fields})

    @property
    def inputs(self) -> Dict[str, Any]:
        values = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        skip = {"subcommand", "output_format", "out"}
        if self.subcommand != "verify":
            skip.add("seed")
        return {
            key: value for key, value in values.items() if key not in skip and value is not None and value is not False
        }

    @property
    def partition_tuple(self) -> PartitionTuple:
        return PartitionTuple.parse(self.mu)


# subcommands


def _involutions(config: RunConfig, io: ConsoleIO) -> Report:
    entries = [Result(f"I_{n}", nonorient.involution_count(n)) for n in range(1, config.nmax + 1)]
    return Report("involutions", config.inputs, entries)


def _mseries(config: RunConfig, io: ConsoleIO) -> Report:
    return Report("mseries", config.inputs, [Result(f"M_{config.rho}", nonorient.m_series(config.rho, config.nmax))])


def _ecount_nonorient(config: RunConfig, io: ConsoleIO) -> Report:
    value = nonorient.e_count_nonorient(config.rho, config.n)
    return Report("ecount-nonorient", config.inputs, [Result("e_count", value)])


def _hh(config: RunConfig, io: ConsoleIO) -> Report:
    if config.all_mu:
        values = punctured.hh_table(config.r, config.k, config.n, config.bound)
    else:
        values = [punctured.hh_mu(config.r, config.k, config.partition_tuple, config.bound)]
    return Report("hh", config.inputs, [Result(str(value.mu), value.value) for value in values])


def _ecount_punctured(config: RunConfig, io: ConsoleIO) -> Report:
    value = punctured.e_count_punctured(config.r, config.k, config.partition_tuple, config.bound)
    return Report("ecount-punctured", config.inputs, [Result("e_count", value)])


def _mixed_poincare(config: RunConfig, io: ConsoleIO) -> Report:
    value = punctured.mixed_poincare(config.r, config.k, config.partition_tuple, config.bound)
    return Report("mixed-poincare", config.inputs, [Result("mixed_poincare", value)])


def _macdonald(config: RunConfig, io: ConsoleIO) -> Report:
    partition = Partition.parse(config.lam)
    value = macdonald_modified(partition, bound=config.bound or MACDONALD_BOUND)
    return Report("macdonald", config.inputs, [Result(str(partition), value)])


def _verify_one(name: str, config: RunConfig) -> Report:
    degree = config.degree or (6 if config.quick else DEFAULT_CUTOFF)
    bound = config.bound or (3 if config.quick else 4)
    if name in nonorient.IDENTITIES:
        return Report(name, {"degree": degree}, [nonorient.verify_identity(name, degree)])
    if name in punctured.HOOK_CHECKS:
        hook_bound = config.bound or HOOK_BOUND
        report = punctured.conjecture_checks([name], hook_bound=hook_bound)
        return Report(name, {"bound": hook_bound}, report.checks)
    if name in punctured.CONJECTURES:
        return Report(name, {"bound": bound}, punctured.conjecture_checks([name], bound).checks)
    suites: Dict[str, Callable[[], Report]] = {
        "closed_forms": punctured.closed_forms_check,
        "e_series_consistency": lambda: punctured.e_series_consistency(nmax=2 if config.quick else 3),
        "maintheo": lambda: nonorient.maintheo_suite(config.seed, 5 if config.quick else 20),
        "mseries_agreement": lambda: nonorient.m_series_agreement(cutoff=min(degree, 6)),
        "leading_coefficients": nonorient.leading_coefficient_check,
        "integrality": lambda: nonorient.integrality_check(nmax=4 if config.quick else 6),
        "parity": nonorient.parity_pattern,
        "denominators": lambda: punctured.denominator_observation(bound),
    }
    return suites[name]()


def _verify(config: RunConfig, io: ConsoleIO) -> Report:
    if config.target != "all":
        report = _verify_one(config.target, config)
        return Report(f"verify {config.target}", config.inputs, report.entries)
    reports = []
    for name in VERIFICATIONS:
        io.error_line(f"<info>Verifying</info> {name}")
        reports.append(_verify_one(name, config))
    for target in ORACLES:
        io.error_line(f"<info>Running oracle</info> {target}")
        reports.append(_oracle(dataclasses.replace(config, subcommand="oracle", target=target), io))
    merged = merge_reports("verify all", reports)
    return Report("verify all", config.inputs, merged.entries)


def _oracle(config: RunConfig, io: ConsoleIO) -> Report:
    if config.target == "nonorient":
        if config.n is not None:
            cases = [(config.n, config.r, config.q)]
        elif config.quick:
            cases = [case for case in oracle.NONORIENT_CASES if case[0] <= 2 and case[2] == 3]
        else:
            cases = list(oracle.NONORIENT_CASES)
        return oracle.nonorient_oracle(cases, io)
    if config.target == "punctured":
        if config.eigenvalues is not None:
            cases = [(config.r, config.eigenvalues, config.q)]
        elif config.quick:
            cases = [case for case in oracle.PUNCTURED_CASES if case[2] <= 5]
        else:
            cases = list(oracle.PUNCTURED_CASES)
        return oracle.punctured_oracle(cases, io)
    if config.target == "orbits":
        qs = (config.q,) if config.q is not None else ((3, 5) if config.quick else (3, 5, 7, 9))
        return oracle.orbit_suite(qs, config.dmax or (3 if config.quick else 4))
    if config.n is not None:
        return oracle.correspondence_oracle([(config.n, config.q)], io)
    return oracle.correspondence_oracle(((1, 3), (2, 3)) if config.quick else ((1, 3), (1, 5), (2, 3)), io)


HANDLERS: Dict[str, Callable[[RunConfig, ConsoleIO], Report]] = {
    "involutions": _involutions,
    "mseries": _mseries,
    "ecount-nonorient": _ecount_nonorient,
    "hh": _hh,
    "ecount-punctured": _ecount_punctured,
    "mixed-poincare": _mixed_poincare,
    "verify": _verify,
    "oracle": _oracle,
    "macdonald": _macdonald,
}


def run(config: RunConfig, io: Optional[ConsoleIO] = None) -> int:
    """Compute the report for `config`, write it and return the exit code."""
    io = ConsoleIO() if io is None else io
    report = HANDLERS[config.subcommand](config, io)
    text = report.render(config.output_format)
    if config.out is not None:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
        io.error_line(f"<comment>Wrote</comment> {config.out}")
    else:
        io.output.write_line_raw(text)
    if not report.passed:
        failed = [check.name for check in report.checks if not check.passed and check.fatal]
        io.error_line(f"<error>{len(failed)} check(s) failed:</error> {', '.join(failed)}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json", help="Output format.")
    common.add_argument("--out", help="Write the report to this file instead of stdout.")

    parser = _Parser(prog="charstack", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {charstack.__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sub = subparsers.add_parser("involutions", parents=[common], help="Involution counts I_n(q).")
    sub.add_argument("--nmax", type=int, default=5)

    sub = subparsers.add_parser("mseries", parents=[common], help="The series M_rho(q,T).")
    sub.add_argument("--rho", type=int, required=True)
    sub.add_argument("--nmax", type=int, default=6)

    sub = subparsers.add_parser("ecount-nonorient", parents=[common], help="E-series of the unpunctured stack.")
    sub.add_argument("--rho", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)

    for name, help_text in (
        ("hh", "The functions HH_mu(z,w)."),
        ("ecount-punctured", "E-series of the punctured stack."),
        ("mixed-poincare", "Conjectured mixed Poincare series."),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--r", type=int, required=True)
        sub.add_argument("--k", type=int, required=True)
        sub.add_argument("--mu", required=name != "hh", help='Partition tuple such as "2,1|3".')
        sub.add_argument("--bound", type=int)
        if name == "hh":
            sub.add_argument("--all", dest="all_mu", action="store_true", help="All partition tuples of size --n.")
            sub.add_argument("--n", type=int)

    sub = subparsers.add_parser("verify", parents=[common], help="Identity, conjecture and oracle checks.")
    sub.add_argument("target", metavar="name", help=f"One of: all, {', '.join(VERIFICATIONS)}.")
    sub.add_argument("--degree", type=int)
    sub.add_argument("--bound", type=int)
    sub.add_argument("--quick", action="store_true", help="Smaller degrees and case lists.")
    sub.add_argument("--seed", type=int, default=0)

    sub = subparsers.add_parser("oracle", parents=[common], help="Brute-force counts over finite fields.")
    sub.add_argument("target", choices=ORACLES)
    for name in ("r", "k", "n", "q", "dmax"):
        sub.add_argument(f"--{name}", type=int)
    sub.add_argument("--eigenvalues", help='Eigenvalues of each class, such as "2,3" or "-1,-1|2,3".')
    sub.add_argument("--quick", action="store_true")

    sub = subparsers.add_parser("macdonald", parents=[common], help="Modified Macdonald polynomial in the m basis.")
    sub.add_argument("--lambda", dest="lam", required=True, help='Partition such as "2,1".')
    sub.add_argument("--bound", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None, io: Optional[ConsoleIO] = None) -> int:
    io = ConsoleIO() if io is None else io
    try:
        namespace = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help and --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    except UsageError as exc:
        io.error_line(f"<error>{exc}</error>")
        return EXIT_USAGE
    try:
        config = RunConfig.from_namespace(namespace)
        return run(config, io)
    except (ValueError, BudgetExceeded) as exc:
        io.error_line(f"<error>{exc}</error>")
        return EXIT_USAGE
    except IntegralityViolation as exc:
        io.error_line(f"<error>Internal check failed: {exc}</error>")
        return EXIT_CHECK_FAILED


def main_entry():
    """Console script entry point."""
    sys.exit(main())
