"""Runs every corpus job through the CLI and validates the JSON reports.

Usage: check_report_schema.py CTSUM_BINARY SCHEMA CORPUS
"""

import json
import subprocess
import sys

import jsonschema


def cli_args(spec):
    args = ["--case", spec.get("case", "shift"), "--json"]
    for p in spec.get("params", []):
        args += ["--param", p]
    if "term" in spec:
        args += ["--term", spec["term"]]
    else:
        args += ["--quotient-x", spec["quotient_x"], "--quotient-y", spec["quotient_y"]]
    if "max_order" in spec:
        args += ["--max-order", str(spec["max_order"])]
    if not spec.get("certificate", True):
        args.append("--no-certificate")
    if spec.get("certificate_normalized", False):
        args.append("--certificate-normalized")
    if spec.get("verify", spec.get("certificate", True)):
        args.append("--verify")
    return args


def main():
    binary, schema_path, corpus = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    count = 0
    with open(corpus) as f:
        records = [json.loads(line) for line in f if line.strip()]
    extra = [
        {"case": "q", "term": "qbinom(n,k)", "certificate_normalized": True},
        {"case": "shift", "term": "binom(n,k)", "certificate": False},
    ]
    for spec in [r["spec"] for r in records] + extra:
        proc = subprocess.run([binary] + cli_args(spec), capture_output=True, text=True)
        count += 1
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError:
            print(f"not JSON for {spec}: {proc.stdout!r}")
            failures += 1
            continue
        errors = list(validator.iter_errors(report))
        if report.get("exit_code") != proc.returncode:
            errors.append(f"exit_code {report.get('exit_code')} but process returned {proc.returncode}")
        for e in errors:
            print(f"{spec}: {getattr(e, 'message', e)}")
        failures += bool(errors)
    print(f"{count - failures} of {count} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
