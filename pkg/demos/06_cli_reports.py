"""
Reproducible reports from the command line
==========================================

``frac-stefan`` wraps the library; every float is written with 17
significant digits so repeated runs are byte-identical. The same entry
point is called in-process here.
"""

# %%
import tempfile
from pathlib import Path

from fracstefan.cli import main

args = ["--problem", "convective", "--alpha", "0.5", "--D", "1", "--m", "1", "--h", "1"]
with tempfile.TemporaryDirectory() as tmp:
    outs = []
    for i in range(2):
        path = Path(tmp) / f"solve{i}.json"
        main(["solve", *args, "--output", str(path)])
        outs.append(path.read_bytes())
    print(outs[0].decode()[:200], "...")
    print("byte-identical:", outs[0] == outs[1])

# %%
# Invalid input exits with code 2 and names the violated invariant.
print("exit code:", main(["solve", "--problem", "dirichlet", "--alpha", "0.5", "--B", "0", "--C", "0"]))

# %%
# A sweep writes one CSV row per parameter combination, in input order.
main(["sweep", "--problem", "flux", "--alpha", "0.3,0.7", "--q", "0.5,1", "--dt", "1e-2"])
