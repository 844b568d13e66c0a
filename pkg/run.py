#!/usr/bin/env python3
"""
Neighborly embedding audit runner

Evaluates lower bounds on the dimension of stably r-neighborly embeddings,
recomputes the characteristic-class pairings behind them, and certifies
supporting hyperplanes of the moment curve.

Exit codes: 0 all checks passed, 1 a computational check failed,
2 invalid input.
"""

import argparse
import logging
import sys

from command_processor import CommandProcessor
from config import Config, configure_logging
from decorators.validation import validated_input
from utils.helpers import parse_angles, parse_int_range

COMMANDS = {
    "bounds": "Best lower bound on Δ(M, r) for every (k, r)",
    "verify-theorem2": "Flag-manifold pairing for the projective-space bound",
    "verify-r2-model": "Identities in the r = 2 configuration-space model",
    "moment": "Support certificates for the moment curve",
    "rank": "Rank of τ on the moment curve",
    "lr-config": "Iterated-antipodal configurations L(r)",
}


def build_parser(config):
    """Argument parser with one subcommand per audit; all flags are shared."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--k', type=str, help="Manifold dimension: 'n' or range 'a..b'")
    common.add_argument('--r', type=str, help="Neighborliness order: 'n' or range 'a..b'")
    common.add_argument('--s', type=int, help='Depth of the L(2^s) construction')
    common.add_argument('--manifold', default='euclidean', choices=['euclidean', 'projective', 'R^k', 'RP^k'])
    common.add_argument('--format', dest='output_format', default='json', choices=['json', 'csv', 'md', 'markdown'])
    common.add_argument('--out', type=str, help='Output path (standard output by default)')
    common.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    common.add_argument('--trials', type=int, default=config.DEFAULT_TRIALS)
    common.add_argument('--delta', type=float, default=1e-3, help='Perturbation size for --sweep')
    common.add_argument('--epsilon', type=float, default=config.DEFAULT_EPSILON)
    common.add_argument('--grid', dest='grid_n', type=int, default=config.GRID_N)
    common.add_argument('--angles', type=str, help='Comma-separated touch angles in radians')
    common.add_argument('--sweep', action='store_true', help='Run the perturbation sweep')
    common.add_argument('--moment', action='store_true', help='Use the moment curve (the only supported curve)')
    common.add_argument('--audit-pairing', action='store_true', help='Attach computed pairings to theorem2 bounds')
    common.add_argument('--tol-eq', type=float)
    common.add_argument('--tol-curv', type=float)
    common.add_argument('--rank-tol', dest='rank_tolerance', type=float)
    common.add_argument('--log-level', default=config.LOG_LEVEL)

    parser = argparse.ArgumentParser(description='Neighborly embedding audit')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, help_text in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def options_from_args(args):
    """Translate parsed arguments into RunConfig fields."""
    options = {
        'command': args.command,
        'k_values': parse_int_range(args.k) if args.k is not None else [],
        'r_values': parse_int_range(args.r) if args.r is not None else [],
        's': args.s,
        'manifold': args.manifold,
        'output_format': args.output_format,
        'out': args.out,
        'seed': args.seed,
        'trials': args.trials,
        'delta': args.delta,
        'epsilon': args.epsilon,
        'grid_n': args.grid_n,
        'angles': parse_angles(args.angles),
        'sweep': args.sweep,
        'moment': args.moment,
        'audit_pairing': args.audit_pairing,
        'tol_eq': args.tol_eq,
        'tol_curv': args.tol_curv,
        'rank_tolerance': args.rank_tolerance,
    }
    if args.command in ('moment', 'rank') and options['angles'] is not None and not options['r_values']:
        options['r_values'] = [len(options['angles'])]
    return options


@validated_input
def _parse_and_process(processor, args):
    return processor.process(options_from_args(args))


def main(argv=None):
    """Main function of the audit runner; returns the process exit code."""
    config = Config()
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on bad usage and 0 on --help
        return int(e.code or 0)

    configure_logging(args.log_level, config.LOG_FILE)
    logger = logging.getLogger(__name__)
    logger.debug(f"Arguments: {vars(args)}")

    try:
        return _parse_and_process(CommandProcessor(config), args)
    except KeyboardInterrupt:
        logger.info("Audit stopped by user.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
