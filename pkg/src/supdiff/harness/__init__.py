"""Instance format, bundled instances, random generator, oracle, reports and CLI."""

from .bundled import reproduce_paper_examples
from .generator import GenKind, gen_random_instance
from .instances import Instance, load, load_bundled, loads
from .oracle import oracle_support, oracle_supports
from .report import Report, run_verify, verify_instance

__all__ = [
    "GenKind",
    "Instance",
    "Report",
    "gen_random_instance",
    "load",
    "load_bundled",
    "loads",
    "oracle_support",
    "oracle_supports",
    "reproduce_paper_examples",
    "run_verify",
    "verify_instance",
]
