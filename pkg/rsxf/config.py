"""
Configuration for the rsxf codec, tools and CLI.
"""

import os

# Code Parameters
DEFAULT_M = int(os.getenv("RSXF_DEFAULT_M", "16"))
DEFAULT_T = int(os.getenv("RSXF_DEFAULT_T", "15"))

# Worker Pool
# 0 means one worker per CPU.
THREADS = int(os.getenv("RSXF_THREADS", "0"))

# Arithmetic Tuning
# Products whose degree sum is below this go through the monomial schoolbook path.
SCHOOLBOOK_DEGREE = int(os.getenv("RSXF_SCHOOLBOOK_DEGREE", "8"))
# Half-GCD levels at or below this run the classic Euclid loop. 0 keeps the full recursion.
HGCD_CUTOVER = int(os.getenv("RSXF_HGCD_CUTOVER", "7"))
# Quotients of degree below this come from long division in the X basis instead of
# the Newton inverse. 0 always takes the Newton path.
DIVREM_LONG_QUOTIENT = int(os.getenv("RSXF_DIVREM_LONG_QUOTIENT", "8"))

# Self-checking postconditions (slower)
DEBUG_CHECKS = os.getenv("RSXF_DEBUG_CHECKS", "false").lower() in ("1", "true", "yes")

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")


def worker_count() -> int:
    """Resolve the effective pool size from RSXF_THREADS."""
    if THREADS > 0:
        return THREADS
    return os.cpu_count() or 1
