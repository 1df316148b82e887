"""Validates cdqs-lab reports and a saved protocol config against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(77)

lab, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)
report_schema = json.loads((schema_dir / "report.schema.json").read_text())
protocol_schema = json.loads((schema_dir / "protocol.schema.json").read_text())

runs = {
    "verify_cds": ["verify", "--protocol", "cds_ip", "--n", "2"],
    "verify_cdqs": ["verify", "--protocol", "eq", "--n", "2"],
    "verify_route": ["verify", "--protocol", "route_teleport"],
    "negate": ["transform", "negate", "--protocol", "eq", "--save", str(work / "neq")],
    "or": ["transform", "or", "--noise-eps", "0.02"],
    "amplify": ["transform", "amplify", "--noise-eps", "0.01"],
    "oneway": ["reduce", "oneway", "--protocol", "eq"],
    "pp": ["reduce", "pp", "--protocol", "eq_pp"],
    "qip": ["reduce", "qip", "--ell", "2"],
    "zk": ["reduce", "zk", "--noise", "0.05"],
}

failures = 0
for name, args in runs.items():
    out = work / f"{name}.json"
    proc = subprocess.run([lab, *args, "--out", str(out)], capture_output=True, text=True)
    if proc.returncode != 0:
        print(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    try:
        jsonschema.validate(json.loads(out.read_text()), report_schema)
        print(f"{name}: report valid")
    except jsonschema.ValidationError as e:
        print(f"{name}: {e.message} at {list(e.absolute_path)}")
        failures += 1

saved = work / "neq" / "protocol.json"
try:
    jsonschema.validate(json.loads(saved.read_text()), protocol_schema)
    print("saved protocol: valid")
except (OSError, jsonschema.ValidationError) as e:
    print(f"saved protocol: {e}")
    failures += 1

sys.exit(1 if failures else 0)
