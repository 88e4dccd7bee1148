"""
Structured Run Log
One JSON line per finished (or aborted) run: grid, boundary condition,
energy figures, timing and outcome.
"""
import json
import logging
import os
import uuid
from datetime import datetime
from typing import Any, Dict, List, Optional

import pytz

from config import RUN_LOG_ENABLED, RUN_LOG_PATH, RUN_LOG_TIMEZONE

logger = logging.getLogger('run_logging')

STATUS_OK = 'ok'
STATUS_CONFIG_ERROR = 'config_error'
STATUS_NUMERICAL_ERROR = 'numerical_error'


class RunLogger:
    """Appends run records to a JSONL file"""

    def __init__(self, log_file: str = RUN_LOG_PATH, enabled: bool = RUN_LOG_ENABLED,
                 timezone: str = RUN_LOG_TIMEZONE):
        self.log_file = log_file
        self.enabled = enabled
        self.tz = pytz.timezone(timezone)

    def log_run(
        self,
        preset: str,
        bc: str,
        nx: int,
        ny: int,
        status: str,
        e0: Optional[float] = None,
        e_final: Optional[float] = None,
        ratio: Optional[float] = None,
        elapsed_s: Optional[float] = None,
        error: Optional[str] = None,
    ) -> Optional[Dict[str, Any]]:
        """
        Record one run. Write failures are logged and swallowed.

        Returns:
            The entry written, or None when the log is disabled
        """
        if not self.enabled:
            return None

        entry = {
            "run_id": str(uuid.uuid4()),
            "timestamp": datetime.now(self.tz).isoformat(),
            "preset": preset,
            "bc": bc,
            "nx": nx,
            "ny": ny,
            "e0": e0,
            "e_final": e_final,
            "ratio": ratio,
            "elapsed_s": round(elapsed_s, 4) if elapsed_s is not None else None,
            "status": status,
            "error": error[:300] if error else None,
        }

        try:
            directory = os.path.dirname(self.log_file)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.log_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry) + "\n")
        except OSError as e:
            logger.warning(f"RUN_LOG_WRITE_FAILED | {self.log_file} | {e}")
        return entry

    def get_recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        if not os.path.exists(self.log_file):
            return []

        runs = []
        with open(self.log_file, "r", encoding="utf-8") as f:
            for line in f:
                try:
                    runs.append(json.loads(line))
                except json.JSONDecodeError:
                    continue
        return runs[-limit:]


# Global instance
_run_logger = RunLogger()


def get_run_logger() -> RunLogger:
    return _run_logger


def set_run_logger(run_logger: RunLogger):
    """Swap the global logger (tests point it at a temporary file)"""
    global _run_logger
    _run_logger = run_logger


def log_run(**fields) -> Optional[Dict[str, Any]]:
    """Log a run (module-level convenience function)"""
    return _run_logger.log_run(**fields)
