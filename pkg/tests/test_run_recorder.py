import os

import pytest

from modules.congruence import canonicalize, prime_power_witness, verify_bounded
from modules.errors import PlaneCongError
from modules.reports import from_json
from modules.run_recorder import RunRecorder
from modules.search import SearchConfig, enumerate_and_verify


def test_requires_run_folder(tmp_path):
    recorder = RunRecorder(base_dir=str(tmp_path))
    with pytest.raises(PlaneCongError):
        recorder.save_command(["verify"])
    with pytest.raises(PlaneCongError):
        recorder.generate_summary_pdf()


def test_saves_reports_and_summary(tmp_path):
    recorder = RunRecorder(base_dir=str(tmp_path))
    folder = recorder.create_run_folder()
    assert os.path.isdir(folder)

    recorder.save_command(["search", "--prime", "3"])
    report = verify_bounded(canonicalize(3, 3, [2], []))
    path = recorder.save_report("verify", report)
    with open(path, encoding="utf-8") as f:
        assert from_json(f.read()) == report

    recorder.save_report("search", enumerate_and_verify(SearchConfig(prime=3)))
    recorder.save_report("witness", prime_power_witness("mod4-triple"))
    pdf = recorder.generate_summary_pdf()

    assert os.path.getsize(pdf) > 0
    with open(pdf, "rb") as f:
        assert f.read(5) == b"%PDF-"
    assert sorted(os.listdir(folder)) == [
        "command.txt", "search.json", "summary.pdf", "verify.json", "witness.json",
    ]
