"""Command-line front end.

Subcommands::

    gsp generate    --n N --dim D --seed S --output X.csv
    gsp transform   --input X.csv (--p P | --d D) --output Z.csv [--report R.json]
    gsp verify      --input X.csv --z Z.csv (--p P | --d D) [--report R.json]
    gsp asymptotics --p P [--k K ...] [--report R.json]

Exit codes: 0 success, 1 infeasible parameter, 2 dependent input vectors,
3 I/O, parse or usage error.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from gsp import asymptotics, csvio
from gsp.equiangular import METHODS, p_from_d, transform
from gsp.errors import DependentInputError, ParamError
from gsp.linalg_core import DEFAULT_TOL, rank
from gsp.verify import verify

EXIT_OK = 0
EXIT_PARAM = 1
EXIT_DEPENDENT = 2
EXIT_IO = 3

SUBCOMMANDS = ("generate", "transform", "verify", "asymptotics")
MAX_REDRAWS = 100


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    input_path: str = None
    output_path: str = None
    report_path: str = None
    z_path: str = None
    p: float = None
    d: float = None
    n: int = None
    dim: int = None
    seed: int = None
    k: list = field(default_factory=lambda: list(asymptotics.DEFAULT_K_GRID))
    method: str = "recurrence"
    tol: float = DEFAULT_TOL
    reorthogonalize: bool = True
    header: bool = False

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.p is not None and self.d is not None:
            raise UsageError("give at most one of --p and --d")
        if self.subcommand == "generate":
            if None in (self.n, self.dim, self.seed) or self.output_path is None:
                raise UsageError("generate requires --n, --dim, --seed and --output")
            if not 1 <= self.n <= self.dim:
                raise UsageError(f"need 1 <= n <= dim, got n={self.n}, dim={self.dim}")
        if self.subcommand == "transform":
            if self.p is None and self.d is None:
                raise UsageError("transform requires one of --p or --d")
            if self.input_path is None or self.output_path is None:
                raise UsageError("transform requires --input and --output")
        if self.subcommand == "verify":
            if self.p is None and self.d is None:
                raise UsageError("verify requires one of --p or --d")
            if self.input_path is None or self.z_path is None:
                raise UsageError("verify requires --input and --z")
        if self.subcommand == "asymptotics":
            if self.p is None:
                raise UsageError("asymptotics requires --p")
            if not self.k or min(self.k) < 2:
                raise UsageError("every --k must be >= 2")
        if self.method not in METHODS:
            raise UsageError(f"--method must be one of {METHODS}")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")


def generate_vectors(n, dim, seed, tol=DEFAULT_TOL):
    """Seeded standard-normal vector set of full rank ``n``.

    Uses numpy's PCG64 bit generator, whose output stream is fixed across
    platforms for a given seed.  Rank-deficient draws are discarded.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(MAX_REDRAWS):
        X = rng.standard_normal((n, dim))
        if rank(X, tol) == n:
            return X
    raise RuntimeError(f"could not draw {n} independent vectors in dimension {dim}")


def _target_p(config):
    return p_from_d(config.d) if config.d is not None else config.p


def _emit(document, path):
    text = json.dumps(document, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_generate(config):
    X = generate_vectors(config.n, config.dim, config.seed, config.tol)
    csvio.write_vectors(config.output_path, X)


def _run_transform(config):
    X = csvio.read_vectors(config.input_path, header=config.header)
    # converting d here keeps --d and --p paths bit-identical
    p = _target_p(config)
    Z = transform(X, p, method=config.method, tol=config.tol,
                  reorthogonalize_basis=config.reorthogonalize)
    csvio.write_vectors(config.output_path, Z.vectors)
    report = verify(X, Z, p, check_prefix_rank=X.shape[0] <= 128)
    _emit(report.as_dict(), config.report_path)


def _run_verify(config):
    X = csvio.read_vectors(config.input_path, header=config.header)
    Z = csvio.read_vectors(config.z_path, header=config.header)
    report = verify(X, Z, _target_p(config), check_prefix_rank=X.shape[0] <= 128)
    _emit(report.as_dict(), config.report_path)


def _run_asymptotics(config):
    estimate = asymptotics.estimate_constant(config.p, config.k)
    _emit(estimate.as_dict(), config.report_path)


_HANDLERS = {
    "generate": _run_generate,
    "transform": _run_transform,
    "verify": _run_verify,
    "asymptotics": _run_asymptotics,
}


def run(config):
    """Execute ``config`` and return the process exit code."""
    try:
        config.validate()
        _HANDLERS[config.subcommand](config)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except DependentInputError as exc:
        print(f"error: {exc} (index {exc.index})", file=sys.stderr)
        return EXIT_DEPENDENT
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for dependent input
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="gsp", description="Equiangular sets with prescribed nested spans.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--input", dest="input_path", help="input vectors (CSV, one per row)")
    parser.add_argument("--output", dest="output_path", help="output vectors (CSV)")
    parser.add_argument("--report", dest="report_path", help="report file (JSON); stdout if omitted")
    parser.add_argument("--z", dest="z_path", help="equiangular set to check (verify)")
    angle = parser.add_mutually_exclusive_group()
    angle.add_argument("--p", type=float, help="pairwise cosine")
    angle.add_argument("--d", type=float, help="pairwise distance")
    parser.add_argument("--n", type=int)
    parser.add_argument("--dim", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--k", type=int, nargs="+", default=list(asymptotics.DEFAULT_K_GRID),
                        help="k values for asymptotics")
    parser.add_argument("--method", choices=METHODS, default="recurrence")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--reorthogonalize", action=argparse.BooleanOptionalAction, default=True)
    parser.add_argument("--header", action="store_true", help="skip the first line of CSV inputs")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return run(RunConfig(**vars(args)))


if __name__ == "__main__":
    sys.exit(main())
