import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("argv", [
    ["laurent_grid.py", "--primes", "2", "3", "--max-n", "4"],
    ["main_theorem_table.py", "--include-char-2"],
    ["lifting_experiment.py"],
    ["oracle_sweep.py", "--random", "4"],
])
def test_script_runs(argv):
    proc = subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]], capture_output=True, text=True,
                          timeout=120)
    assert proc.returncode == 0, proc.stderr + proc.stdout
