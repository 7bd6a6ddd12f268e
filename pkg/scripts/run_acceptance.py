#!/usr/bin/env python3
"""Run the acceptance suite with per-criterion verdict lines visible.

Criterion 8 is expected to fail; see tests/test_acceptance.py for why and
tests/test_fk3.py for the certified replacement facts.
"""

import subprocess
import sys

if __name__ == "__main__":
    sys.exit(subprocess.call(
        [sys.executable, "-m", "pytest", "-s", "-v", "tests/test_acceptance.py"]))
