from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

try:
    from dotenv import load_dotenv
except ModuleNotFoundError:
    def load_dotenv() -> None:
        return None


load_dotenv()

MAX_SYMFUNC_DEGREE = 12
MAX_MACDONALD_DEGREE = 8
KAC_LEVEL_GUARD = {1: 4, 2: 3, 3: 2}
MAX_PHI_LEVEL = 4
MAX_CRYSTAL_ORDER = 6
MAX_RMATRIX_LEVEL = 2
MAX_GENMAC_LEVEL = 4
DEFAULT_POINTS = 3


def _to_bool(value: str, default: bool = True) -> bool:
    normalized = value.strip().lower()
    if normalized in ("1", "true", "yes", "on"):
        return True
    if normalized in ("0", "false", "no", "off"):
        return False
    return default


@dataclass(frozen=True)
class Settings:
    log_file: str = os.getenv("LOG_FILE", ".data/dim_agt.log")
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    console_log_level: str = os.getenv("CONSOLE_LOG_LEVEL", "WARNING")
    report_dir: str = os.getenv("REPORT_DIR", ".data/reports")
    history_file: str = os.getenv("HISTORY_FILE", ".data/runs.jsonl")
    record_history: bool = _to_bool(os.getenv("RECORD_HISTORY", "true"))
    fixture_dir: str = os.getenv("FIXTURE_DIR", str(Path(__file__).parent / "fixtures"))
