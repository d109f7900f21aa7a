"""Runs every CLI command and validates each emitted JSON against its schema."""

import json
import pathlib
import shutil
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(0)

cli, schemas, configs, work = (pathlib.Path(a) for a in sys.argv[1:5])
shutil.rmtree(work, ignore_errors=True)
work.mkdir(parents=True)


def load_schema(name):
    schema = json.loads((schemas / f"{name}.v1.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return schema


def validate(path, name):
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, load_schema(name), cls=jsonschema.Draft202012Validator)
    assert doc["schema"] == f"sbp.{name}/1", path
    print(f"ok  {path.relative_to(work)}  ({name})")


def run(args, expect=0):
    out = subprocess.run([str(cli), *args], capture_output=True, text=True)
    summary = json.loads(out.stdout.strip().splitlines()[-1])
    assert out.returncode == expect, (args, out.returncode, out.stdout, out.stderr)
    assert summary["exit"] == expect, summary
    return summary


for cfg in sorted(configs.glob("*.json")):
    jsonschema.validate(json.loads(cfg.read_text()), load_schema("config"), cls=jsonschema.Draft202012Validator)
    print(f"ok  {cfg.name}  (config)")

d = work / "solve"
run(["solve", "--out-dir", str(d)])
validate(d / "report.json", "report")
validate(d / "audit.json", "audit")

d = work / "solve_sp"
run(["solve_sp", "--out-dir", str(d)])
validate(d / "report.json", "report")
validate(d / "audit.json", "audit")

d = work / "refused"
run(["solve", "--max-iters", "1", "--polish-iters", "0", "--out-dir", str(d)], expect=1)
validate(d / "report.json", "report")
validate(d / "audit.json", "audit")

d = work / "audit"
run(["audit", "--input-profile", str(work / "solve" / "u.csv"), "--out-dir", str(d)])
validate(d / "report.json", "report")
validate(d / "audit.json", "audit")

d = work / "fiber"
run(["fiber", "--seed-profile", "bump", "--out-dir", str(d)])
validate(d / "fiber.json", "fiber")

d = work / "scan"
run(["nonexist_scan", "--p-values", "6", "1.5", "--n-samples", "10", "--out-dir", str(d)])
validate(d / "scan.json", "scan")

d = work / "oracle"
run(["oracle_check", "--out-dir", str(d)])
validate(d / "oracle.json", "oracle")

d = work / "sweep"
run(["--config", str(configs / "sweep.json"), "--out-dir", str(d)])
validate(d / "sweep.json", "sweep")
assert (d / "sweep.csv").read_text().startswith("a,c_a,gap,dirichlet_norm\n")
