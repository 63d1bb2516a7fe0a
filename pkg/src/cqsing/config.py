"""Verification switches and desk-scale bounds used by tests and the CLI.

Dual-route verification is the correctness story of this package: each
operation that has a closed form is re-derived through an independent
route and the two results are compared exactly.  The level is process
global, set once at startup (the library itself never mutates it while
computing).

Levels:

* ``"assert"`` (default) -- recompute second routes inline, raise
  :class:`~cqsing.errors.VerificationError` on any mismatch.
* ``"report"`` -- like ``assert`` but also print one line per check.
* ``"off"``    -- skip second routes (large sweeps).
"""

import sys

from .errors import VerificationError

VERIFY_LEVELS = ("off", "assert", "report")

_verify_level = "assert"

# Enumeration bounds for brute-force scans.  Staircase minima always have
# coordinates < d; one extra period guards edge effects.
STAIRCASE_SCAN_PERIODS = 2
# Exponential searches (definitional genericity) stay at desk scale.
GENERICITY_MAX_D = 12


def set_verification(level):
    global _verify_level
    if level not in VERIFY_LEVELS:
        raise ValueError(f"unknown verification level {level!r}")
    _verify_level = level


def verification_level():
    return _verify_level


def verifying():
    return _verify_level != "off"


def check(name, ok, detail=""):
    """Record the outcome of one dual-route comparison."""
    if _verify_level == "report":
        status = "ok" if ok else "FAIL"
        print(f"verify: {name}: {status}", file=sys.stderr)
    if not ok:
        raise VerificationError(f"route disagreement in {name}: {detail}")
