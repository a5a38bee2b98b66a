"""Driving the command line end to end.

Every library capability is reachable from the `signspectra` command.  The
demo writes a matrix to CSV, runs the subcommands against it, and prints
trimmed slices of their JSON reports.
"""

import json
import os
import subprocess
import sys
import tempfile

env = {**os.environ, "SIGNSPECTRA_THREADS": "1"}


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "signspectra", *args],
        capture_output=True, text=True, env=env,
    )
    return proc.returncode, proc.stdout


with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "cycle.csv")
    with open(path, "w") as fh:
        fh.write("0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n0,0,0,0,1\n1,0,0,0,0\n")

    code, out = run("compound", path)
    print("compound ->", out.splitlines()[0], "... exit", code)

    code, out = run("signsym", path)
    print("\nsignsym ->", out.strip(), "exit", code)

    code, out = run("wsets", path)
    report = json.loads(out)
    print("\nwsets -> unique candidates:", report["unique_w_sets"],
          "| transitive exists:", report["exists_transitive"])

    code, out = run("classify", path)
    report = json.loads(out)
    print("\nclassify -> theorem:", report["theorem"],
          "| k:", report["peripheral"]["k"],
          "| all verified:", all(p["verified"] for p in report["predictions"]),
          "| exit", code)

    code, out = run("analyze", path)
    report = json.loads(out)
    print("\nanalyze -> top-level keys:", sorted(report.keys()))
    print("analyze -> verified:", report["verified"], "| exit", code)

    # The generator subcommand builds seeded families from an inline JSON
    # spec; specs can also be stored in files for reproducible corpora.
    code, out = run("gen", '{"kind": "cyclic_h", "n": 6, "h": 3, "seed": 4}',
                    "--format", "json")
    rows = json.loads(out)["rows"]
    print("\ngen cyclic_h(6,3) row 1:", [round(v, 3) for v in rows[0]])

    manifest = os.path.join(tmp, "manifest.json")
    with open(manifest, "w") as fh:
        json.dump({"specs": [
            {"kind": "tp2", "n": 4, "seed": 1},
            {"kind": "cyclic_h", "n": 5, "h": 5, "seed": 2},
        ]}, fh)
    code, out = run("verify-corpus", manifest)
    result = json.loads(out)
    print("\nverify-corpus ->",
          [(r["theorem"], r["ok"]) for r in result["results"]],
          "exit", code)
