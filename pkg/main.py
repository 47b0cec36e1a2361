#!/usr/bin/env python3
"""
Drinfeld Double Toolkit
Command-line access to the quantum double D(G) of a finite group: axiom
verification, irreducible modules, fusion rules and modular data.

Usage:
    dgd <command> <group spec> [--tol TOL] [--seed SEED] [--format json|csv|pretty] [--out FILE]

Example:
    dgd verify S3 --suite all
    dgd verlinde dihedral:4 --format pretty
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from double_algebra import DEFAULT_SEED, DEFAULT_TRIPLE_LIMIT
from drinfeld_double import ALL_SUITES, CACHE_ACTIONS, CACHE_ENV, FIXTURES, DoubleAnalyzer, format_pretty
from group_core import DEFAULT_MAX_ORDER
from mackey_irreps import DEFAULT_NMAX, DEFAULT_SYMMETRIZER_LIMIT
from result_cache import DEFAULT_CACHE_DB
from verification import DEFAULT_TOL

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2

COMMANDS = ("group", "verify", "irreps", "fusion", "modular", "verlinde", "nichols", "cache")
FORMATS = ("json", "csv", "pretty")


@dataclass
class RunConfig:
    """Settings of one CLI run."""
    command: str
    spec: Optional[str] = None
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    triple_limit: int = DEFAULT_TRIPLE_LIMIT
    symmetrizer_limit: int = DEFAULT_SYMMETRIZER_LIMIT
    max_order: int = DEFAULT_MAX_ORDER
    output_format: str = "json"
    out: Optional[str] = None
    suites: List[str] = field(default_factory=lambda: ["all"])
    nmax: int = DEFAULT_NMAX
    label: Optional[Tuple[int, int]] = None
    fixture: Optional[str] = None
    dim: int = 2
    use_cache: bool = True
    cache_db: str = DEFAULT_CACHE_DB
    cache_max_age: Optional[float] = None
    cache_action: str = "stats"
    cache_scope: Optional[str] = None
    days: Optional[float] = None
    log_level: int = logging.INFO

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command '{self.command}'")
        if self.tol <= 0:
            raise ValueError(f"--tol must be positive, got {self.tol}")
        for name in ("triple_limit", "symmetrizer_limit", "max_order", "nmax", "dim"):
            if getattr(self, name) <= 0:
                raise ValueError(f"--{name.replace('_', '-')} must be positive, got {getattr(self, name)}")
        if self.output_format not in FORMATS:
            raise ValueError(f"--format must be one of {FORMATS}")
        if self.cache_max_age is not None and self.cache_max_age < 0:
            raise ValueError(f"--cache-max-age must be non-negative, got {self.cache_max_age}")
        if self.command == "cache":
            if self.cache_action == "prune" and self.days is None:
                raise ValueError("cache prune needs --days")
            return
        if self.spec is None and not (self.command == "nichols" and self.fixture):
            raise ValueError(f"{self.command} needs a group spec")


def parse_label(text: str) -> Tuple[int, int]:
    """Parse a 'k,r' label into (class index, irrep index)."""
    try:
        k, r = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"label must look like 'k,r', got '{text}'")
    return k, r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=DEFAULT_TOL,
                        help=f'Pass threshold for verification checks (default: {DEFAULT_TOL})')
    common.add_argument('--seed', type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help=f'Seed for sampled checks (default: {hex(DEFAULT_SEED)})')
    common.add_argument('--format', dest='output_format', choices=FORMATS, default='json',
                        help='Output format (default: json)')
    common.add_argument('--out', '-o', help='Write the output to this file instead of stdout')
    common.add_argument('--triple-limit', type=int, default=DEFAULT_TRIPLE_LIMIT,
                        help=f'Largest |G| for pair/triple tensor checks (default: {DEFAULT_TRIPLE_LIMIT})')
    common.add_argument('--symmetrizer-limit', type=int, default=DEFAULT_SYMMETRIZER_LIMIT,
                        help=f'Largest (dim V)^n for quantum symmetrizers (default: {DEFAULT_SYMMETRIZER_LIMIT})')
    common.add_argument('--max-order', type=int, default=DEFAULT_MAX_ORDER,
                        help=f'Largest group order accepted (default: {DEFAULT_MAX_ORDER})')

    # Cache options
    common.add_argument('--no-cache', action='store_true', help='Disable the result cache')
    common.add_argument('--cache-db', default=os.environ.get(CACHE_ENV, DEFAULT_CACHE_DB),
                        help=f'Result cache database (default: ${CACHE_ENV} or {DEFAULT_CACHE_DB})')
    common.add_argument('--cache-max-age', type=float, metavar='DAYS',
                        help='Prune cached results unused for DAYS days before running')

    # Logging options
    common.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    common.add_argument('--quiet', '-q', action='store_true', help='Minimal output')

    parser = argparse.ArgumentParser(
        prog="dgd",
        description="Drinfeld Double Toolkit - Hopf algebra checks, irreducible modules and modular data of D(G)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Group specs:
  cyclic:n  dihedral:n  sym:n  alt:4  q8  prod(spec,spec)  file:path
  short names C4, D4, S3, A4, Q8 are accepted too

Examples:
  dgd group S3
  dgd verify Q8 --suite ybe
  dgd irreps sym:3 --format csv
  dgd verlinde prod(cyclic:2,cyclic:2)
  dgd nichols S3 --label 1,0 --nmax 3
  dgd nichols --fixture=-flip --dim 2
  dgd cache stats
  dgd cache clear --group S3 --only fusion
  dgd cache prune --days 30
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('group', parents=[common], help='Group summary').add_argument('spec')

    verify = subparsers.add_parser('verify', parents=[common], help='Verify axiom suites')
    verify.add_argument('spec')
    verify.add_argument('--suite', action='append', dest='suites', choices=list(ALL_SUITES) + ['all'],
                        help='Suite to run; repeatable (default: all)')

    subparsers.add_parser('irreps', parents=[common], help='Irreducible modules and characters').add_argument('spec')
    subparsers.add_parser('fusion', parents=[common], help='Brute-force fusion rules').add_argument('spec')
    subparsers.add_parser('modular', parents=[common], help='S, T and Fourier matrices').add_argument('spec')
    subparsers.add_parser('verlinde', parents=[common],
                          help='Verlinde fusion compared with brute force').add_argument('spec')

    nichols = subparsers.add_parser('nichols', parents=[common], help='Nichols algebra degree dimensions')
    nichols.add_argument('spec', nargs='?', help='Group spec (omit when using --fixture)')
    nichols.add_argument('--label', type=parse_label, help="Irreducible label 'k,r' (default: 0,0)")
    nichols.add_argument('--fixture', choices=FIXTURES,
                         help='Use the flip or minus flip on C^dim (write --fixture=-flip)')
    nichols.add_argument('--dim', type=int, default=2, help='Dimension of the fixture space (default: 2)')
    nichols.add_argument('--nmax', type=int, default=DEFAULT_NMAX,
                         help=f'Highest degree (default: {DEFAULT_NMAX})')

    cache = subparsers.add_parser('cache', parents=[common], help='Inspect or maintain the result cache')
    cache.add_argument('action', nargs='?', choices=CACHE_ACTIONS, default='stats',
                       help='stats (default), clear or prune')
    cache.add_argument('--group', dest='spec', help='Clear only results of this group spec')
    cache.add_argument('--only', dest='cache_scope', choices=COMMANDS[:-1],
                       help='Clear only results of this command')
    cache.add_argument('--days', type=float, help='Age limit in days for prune')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.quiet:
        log_level = logging.WARNING
    elif args.verbose:
        log_level = logging.DEBUG
    else:
        log_level = logging.INFO

    return RunConfig(
        command=args.command,
        spec=args.spec,
        tol=args.tol,
        seed=args.seed,
        triple_limit=args.triple_limit,
        symmetrizer_limit=args.symmetrizer_limit,
        max_order=args.max_order,
        output_format=args.output_format,
        out=args.out,
        suites=getattr(args, 'suites', None) or ["all"],
        nmax=getattr(args, 'nmax', DEFAULT_NMAX),
        label=getattr(args, 'label', None),
        fixture=getattr(args, 'fixture', None),
        dim=getattr(args, 'dim', 2),
        use_cache=not args.no_cache,
        cache_db=args.cache_db,
        cache_max_age=args.cache_max_age,
        cache_action=getattr(args, 'action', 'stats'),
        cache_scope=getattr(args, 'cache_scope', None),
        days=getattr(args, 'days', None),
        log_level=log_level,
    )


def run(config: RunConfig) -> dict:
    analyzer = DoubleAnalyzer(
        tol=config.tol,
        seed=config.seed,
        triple_limit=config.triple_limit,
        symmetrizer_limit=config.symmetrizer_limit,
        max_order=config.max_order,
        use_cache=config.use_cache,
        cache_db=config.cache_db,
        cache_max_age=config.cache_max_age,
        log_level=config.log_level,
    )
    if config.command == "cache":
        return analyzer.cache_command(config.cache_action, spec=config.spec, command=config.cache_scope,
                                      max_age_days=config.days)
    if config.command == "verify":
        return analyzer.verify(config.spec, suites=config.suites)
    if config.command == "nichols":
        return analyzer.nichols(config.spec, label=config.label, fixture=config.fixture,
                                dim=config.dim, nmax=config.nmax)
    if config.command == "group":
        return analyzer.group_summary(config.spec)
    return getattr(analyzer, config.command)(config.spec)


def render(result: dict, output_format: str) -> str:
    if output_format == "pretty":
        return format_pretty(result)
    if output_format == "csv" and "csv" in result:
        return result["csv"]
    if "payload" in result:
        return json.dumps(result["payload"], indent=2, sort_keys=True) + "\n"
    return json.dumps({"error": result.get("error")}, indent=2, sort_keys=True) + "\n"


def exit_code(result: dict) -> int:
    if result.get("success"):
        return EXIT_OK
    if result.get("error_kind") == "input":
        return EXIT_INPUT_ERROR
    return EXIT_FAILURE


def main(argv: Optional[List[str]] = None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = config_from_args(args)
    except ValueError as e:
        print(f"❌ Invalid arguments: {str(e)}", file=sys.stderr)
        sys.exit(EXIT_INPUT_ERROR)

    try:
        result = run(config)
    except KeyboardInterrupt:
        print("\n🛑 Interrupted by user", file=sys.stderr)
        sys.exit(EXIT_FAILURE)
    except Exception as e:
        print(f"❌ Fatal error: {str(e)}", file=sys.stderr)
        sys.exit(EXIT_FAILURE)

    text = render(result, config.output_format)
    if config.out:
        with open(config.out, 'w', encoding='utf-8') as f:
            f.write(text)
        print(f"📄 Output saved to: {config.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)

    if not result.get("success"):
        print(f"❌ {config.command} failed: {result.get('error', 'verification failure')}", file=sys.stderr)
    sys.exit(exit_code(result))


if __name__ == "__main__":
    main()
