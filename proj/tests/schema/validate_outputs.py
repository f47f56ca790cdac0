# Copyright 2026 The QuotaMatch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs the CLI and validates its JSON outputs against the documented schemas."""

import argparse
import csv
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, *args):
    return subprocess.run([cli, *args], check=True, capture_output=True, text=True)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--docs", required=True, type=pathlib.Path)
    args = parser.parse_args()

    summary_schema = json.loads((args.docs / "summary.schema.json").read_text())
    instance_schema = json.loads((args.docs / "instance.schema.json").read_text())

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        for policy, example in [("ts", "1"), ("ucb", "ucb-vs-ts"), ("clairvoyant", "2")]:
            out = tmp / policy
            run(args.cli, "simulate", "--example", example, "--policy", policy,
                "--trials", "3", "--horizon", "60", "--out", str(out))
            summary = json.loads((out / "summary.json").read_text())
            jsonschema.validate(summary, summary_schema)
            with open(out / "aggregate.csv", newline="") as f:
                rows = list(csv.DictReader(f))
            assert len(rows) == 60, len(rows)
            assert list(rows[0]) == ["round", "mean_bswg", "stderr", "bound"]
            if policy == "clairvoyant":
                assert summary["matching_rate"]["mean"] == 1.0
                assert summary["bswg"]["final"] == 0.0

        out = tmp / "deviation"
        run(args.cli, "simulate", "--example", "1", "--trials", "2", "--horizon", "40",
            "--deviate-firm", "2", "--deviation", "reverse", "--out", str(out))
        summary = json.loads((out / "summary.json").read_text())
        jsonschema.validate(summary, summary_schema)
        assert summary["spec"]["deviation"] == {"firm": 2, "rule": "reverse"}

        for example in ["1", "2", "3", "4", "ucb-vs-ts"]:
            path = tmp / f"instance_{example}.json"
            run(args.cli, "instance", "--example", example, "--out", str(path))
            jsonschema.validate(json.loads(path.read_text()), instance_schema)
    print("schemas ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
