"""File-based pipeline, end to end, through the command-line interface.

Writes a subspace spec, builds and verifies the basis, re-verifies the
emitted file, and demonstrates that the fault-injection hook trips the
verifier. Everything runs in a throwaway directory.
"""

import json
import tempfile
from pathlib import Path

from auerbach.cli import main

workdir = Path(tempfile.mkdtemp(prefix="auerbach-demo-"))
spec_path = workdir / "spec.json"
basis_path = workdir / "basis.json"
report_path = workdir / "report.json"
recheck_path = workdir / "recheck.json"

spec_path.write_text(json.dumps({
    "functionals": [
        {"coeffs": ["1", "0", "1/2"]},
        {"coeffs": ["0", "1", "2/3"]},
    ]
}, indent=2))

code = main(["c0", "--input", str(spec_path), "--out", str(basis_path),
             "--verify", "--report", str(report_path)])
print("build + verify exit code:", code)

code = main(["verify", "--spec", str(spec_path), "--basis", str(basis_path),
             "--report", str(recheck_path)])
print("re-verify exit code:", code)
print("reports byte-identical:",
      report_path.read_bytes() == recheck_path.read_bytes())

totals = json.loads(report_path.read_text())["totals"]
print("report totals:", totals)

code = main(["c0", "--input", str(spec_path), "--debug-corrupt",
             "--report", str(workdir / "fault.json")])
print("fault-injection exit code:", code, "(1 = verification failed, as intended)")

print("\nartifacts left in", workdir)
