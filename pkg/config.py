import os
import sys
import logging
from dotenv import load_dotenv

load_dotenv()


def _env_float(name, default):
    return float(os.getenv(f'NEIGHBORLY_{name}', default))


def _env_int(name, default):
    return int(os.getenv(f'NEIGHBORLY_{name}', default))


class Config:
    def __init__(self):
        # Support-certificate tolerances
        self.TOL_EQ = _env_float('TOL_EQ', 1e-10)
        self.TOL_CURV = _env_float('TOL_CURV', 1e-12)
        self.TOL_POS = _env_float('TOL_POS', 0.0)
        self.POSITIVITY_SLACK = _env_float('POSITIVITY_SLACK', 1e-14)
        self.TOL_SEP = _env_float('TOL_SEP', 1e-6)
        self.TOL_ZERO = _env_float('TOL_ZERO', 1e-10)
        self.NULLSPACE_TOLERANCE = _env_float('NULLSPACE_TOLERANCE', 1e-12)

        # Rank decisions
        self.RANK_TOLERANCE = _env_float('RANK_TOLERANCE', 1e-9)
        self.FRAME_TOLERANCE = _env_float('FRAME_TOLERANCE', 1e-10)

        # Sweeps and sampling
        self.GRID_N = _env_int('GRID_N', 4096)
        self.DEFAULT_TRIALS = _env_int('DEFAULT_TRIALS', 100)
        self.DEFAULT_SEED = _env_int('DEFAULT_SEED', 0)
        self.DEFAULT_EPSILON = _env_float('DEFAULT_EPSILON', 0.4)

        # Brute-force quotient oracle is only run on small flag rings
        self.ORACLE_MAX_K = _env_int('ORACLE_MAX_K', 5)
        self.ORACLE_MAX_R = _env_int('ORACLE_MAX_R', 3)

        # Logging
        self.LOG_LEVEL = os.getenv('NEIGHBORLY_LOG_LEVEL', 'WARNING').upper()
        self.LOG_FILE = os.getenv('NEIGHBORLY_LOG_FILE')


def configure_logging(level='WARNING', log_file=None):
    # stdout carries reports, so log records go to stderr
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )
