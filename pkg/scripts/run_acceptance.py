"""Run the acceptance suite and show one PASS/FAIL line per criterion."""
import pathlib
import sys

import pytest

HERE = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(HERE / "tests" / "test_acceptance.py"), "-q", *sys.argv[1:]]))
