"""check / roundtrip 共用的参数"""

from rational_inference.exceptions import ValidationError
from rational_inference.logic import AtomEnv, check_exhaustive

# VerificationRun.seed 是有符号 64 位整数
MAX_SEED = (1 << 63) - 1


def add_run_arguments(parser, trials: int):
    parser.add_argument("--atoms", type=int, default=2, help="原子个数 (≤ EXHAUSTIVE_MAX_ATOMS)")
    parser.add_argument("--trials", type=int, default=trials)
    parser.add_argument("--seed", type=int, default=0)


def validate_run_options(options) -> AtomEnv:
    """在任何计算之前校验参数"""
    if options["trials"] < 0:
        raise ValidationError(f"Trials must be non-negative, got {options['trials']}")
    if not 0 <= options["seed"] <= MAX_SEED:
        raise ValidationError(f"Seed must be in 0..{MAX_SEED}")
    env = AtomEnv.default(options["atoms"])
    check_exhaustive(env)
    return env
