from __future__ import annotations

from pathlib import Path


APP_NAME = "wo-decider"

HOME_DIR = Path.home()
LOCAL_CONFIG_DIR = HOME_DIR / ".config"
LOCAL_SHARE_DIR = HOME_DIR / ".local" / "share"

CONFIG_DIR_ENV = "WO_DECIDER_CONFIG_DIR"
LOG_DIR_ENV = "WO_DECIDER_LOG_DIR"

CONFIG_DIR = LOCAL_CONFIG_DIR / APP_NAME
DATA_DIR = LOCAL_SHARE_DIR / APP_NAME
LOG_ROOT = DATA_DIR / "logs"

MAX_SECONDS_KEY = "MAX_SECONDS"
MAX_CLOSURE_KEY = "MAX_CLOSURE"
MAX_RANK_KEY = "MAX_RANK"
ALLOW_EMPTY_KEY = "ALLOW_EMPTY"
LAMBDA_READING_KEY = "LAMBDA_READING"
FINITE_STYLE_KEY = "FINITE_STYLE"

LAMBDA_CORRECTED = "corrected"
LAMBDA_LITERAL = "literal"
FINITE_STYLE_SUM = "sum"
FINITE_STYLE_DIRECT = "direct"

DEFAULT_MAX_SECONDS = 120
DEFAULT_MAX_CLOSURE = 10**6
DEFAULT_MAX_RANK = 4

# Machine-natural bound for ordinal exponents and coefficients.
NAT_MAX = 2**63 - 1

# Brute-force oracle guards.
BRUTEFORCE_MAX_ELEMENTS = 8
BRUTEFORCE_MAX_RANK = 4

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE_ERROR = 2
EXIT_RESOURCE_LIMIT = 3
