import json
from datetime import datetime

from services.run_logging import STATUS_NUMERICAL_ERROR, STATUS_OK, RunLogger, log_run


class TestRunLogger:
    def test_entry_fields(self, tmp_path):
        logger = RunLogger(log_file=str(tmp_path / "runs" / "log.jsonl"), enabled=True, timezone="UTC")
        entry = logger.log_run(preset="narrow-beam", bc="abc0", nx=513, ny=513, status=STATUS_OK,
                               e0=1.0, e_final=1e-4, ratio=1e-4, elapsed_s=1.234567)
        assert entry["elapsed_s"] == 1.2346
        assert entry["error"] is None
        assert datetime.fromisoformat(entry["timestamp"]).utcoffset().total_seconds() == 0

        with open(tmp_path / "runs" / "log.jsonl", encoding="utf-8") as f:
            lines = [json.loads(line) for line in f]
        assert lines == [entry]

    def test_local_timezone(self, tmp_path):
        logger = RunLogger(log_file=str(tmp_path / "log.jsonl"), timezone="Asia/Kolkata")
        entry = logger.log_run(preset="p", bc="abc1", nx=3, ny=3, status=STATUS_OK)
        offset = datetime.fromisoformat(entry["timestamp"]).utcoffset().total_seconds()
        assert offset == 5.5 * 3600

    def test_error_truncated(self, tmp_path):
        logger = RunLogger(log_file=str(tmp_path / "log.jsonl"))
        entry = logger.log_run(preset="p", bc="abc0", nx=3, ny=3, status=STATUS_NUMERICAL_ERROR,
                               error="x" * 1000)
        assert len(entry["error"]) == 300

    def test_disabled(self, tmp_path):
        path = tmp_path / "log.jsonl"
        logger = RunLogger(log_file=str(path), enabled=False)
        assert logger.log_run(preset="p", bc="abc0", nx=3, ny=3, status=STATUS_OK) is None
        assert not path.exists()

    def test_unwritable_path_is_swallowed(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        logger = RunLogger(log_file=str(blocker / "log.jsonl"))
        entry = logger.log_run(preset="p", bc="abc0", nx=3, ny=3, status=STATUS_OK)
        assert entry["status"] == STATUS_OK

    def test_recent_runs(self, tmp_path):
        logger = RunLogger(log_file=str(tmp_path / "log.jsonl"))
        for n in range(5):
            logger.log_run(preset="p", bc="abc0", nx=n + 3, ny=3, status=STATUS_OK)
        assert [r["nx"] for r in logger.get_recent_runs(limit=2)] == [6, 7]


def test_module_function_uses_global_logger(run_log):
    log_run(preset="wide-beam", bc="abc1", nx=9, ny=9, status=STATUS_OK)
    assert run_log.get_recent_runs()[-1]["preset"] == "wide-beam"
