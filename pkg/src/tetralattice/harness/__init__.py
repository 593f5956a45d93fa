"""Identity registry, suite runner and command-line interface."""

from .registry import EVIDENCE, FAIL, PASS, REGISTRY, run_suite, sample_points, select, verify

__all__ = ["EVIDENCE", "FAIL", "PASS", "REGISTRY", "run_suite", "sample_points", "select", "verify"]
