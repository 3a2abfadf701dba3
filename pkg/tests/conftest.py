import pytest

from loopblocks.group_core import BUILTIN_NAMES, from_name
from loopblocks.rep_theory import character_table

SMALL = [n for n in BUILTIN_NAMES if from_name(n).order <= 12]
UPTO24 = [n for n in BUILTIN_NAMES if from_name(n).order <= 24]
TINY = ["Z2", "Z3", "S3", "Q8", "D8"]


def table(name: str):
    return character_table(from_name(name))


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line straight to the terminal, then assert."""

    def _report(label: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}{': ' + detail if detail else ''}")
        assert ok, f"{label}: {detail}"

    return _report
