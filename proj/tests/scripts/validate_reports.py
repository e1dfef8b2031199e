#!/usr/bin/env python3
# Copyright (c) unreal contributors.
# SPDX-License-Identifier: Apache-2.0
"""Runs `unreal prove` over the corpus and validates every report against the schema."""
import json
import pathlib
import subprocess
import sys
import tempfile

try:
    import jsonschema
except ImportError:
    print("jsonschema is not installed; skipping")
    sys.exit(0)


def main() -> int:
    tool, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((root / "schemas" / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as out:
        runs = []
        for sl in sorted((root / "benchmarks").glob("*.sl")):
            runs.append([str(sl)])
            runs.append([str(sl), "--seed", "1", "--seed-examples", "random", "--max-rounds", "4"])
        runs.append([str(root / "benchmarks" / "max2_limited_if.sl"), "--backend", "c-emit", "--out", out,
                     "--cert-out", str(pathlib.Path(out) / "cert.txt")])
        for args in runs:
            proc = subprocess.run([tool, "prove", *args], capture_output=True, text=True, timeout=120)
            if proc.returncode not in (0, 1, 2):
                print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            report = json.loads(proc.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            for e in errors:
                print(f"FAIL {' '.join(args)}: {'/'.join(map(str, e.path))}: {e.message}")
            failures += len(errors)
            expected = {"unrealizable": 0, "realizable": 1, "realizable-bounded": 1, "unknown": 2}[report["verdict"]]
            if expected != proc.returncode:
                print(f"FAIL {' '.join(args)}: verdict {report['verdict']} with exit {proc.returncode}")
                failures += 1
    print(f"{len(runs)} reports checked, {failures} problems")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
