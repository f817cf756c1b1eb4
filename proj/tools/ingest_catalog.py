#!/usr/bin/env python3
"""Regenerate catalog/links/*.diagram from spherogram's link table.

Each PD code is taken with spherogram's component orientation, shifted to
1-based edge labels, and converted with `beadlink import-pd`. The frozen
diagrams are checked in; this script only needs rerunning if the source
data changes.

usage: ingest_catalog.py <beadlink-binary> <catalog-dir>
"""
import subprocess
import sys
import warnings
from pathlib import Path

warnings.filterwarnings("ignore")
import spherogram  # noqa: E402

LINKS = [
    "L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1",
    "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2",
]


def pd_string(link):
    return " ".join("X[%s]" % ",".join(str(e + 1) for e in x) for x in link.PD_code())


def main():
    tool, root = sys.argv[1], Path(sys.argv[2])
    out_dir = root / "links"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in LINKS:
        link = spherogram.Link(name)
        pd = pd_string(link)
        signs = "".join("+" if c.sign > 0 else "-" for c in link.crossings)
        proc = subprocess.run(
            [tool, "import-pd", pd, "--signs", signs, "--name", name,
             "--orientation", "spherogram component orientation, unchanged"],
            check=True, capture_output=True, text=True)
        if proc.stderr:
            sys.stderr.write(f"{name}: {proc.stderr}")
        (out_dir / f"{name}.diagram").write_text(proc.stdout)
        print(name, signs)


if __name__ == "__main__":
    main()
