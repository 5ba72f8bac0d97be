"""Validate fixtures and every --json report shape against the shipped schemas.

Usage: check_schemas.py <tempnet binary> <repository root>
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_schemas(root):
    schemas = {}
    for path in sorted((root / "schema").glob("*.schema.json")):
        schemas[path.name] = json.loads(path.read_text())
    registry = Registry().with_resources(
        (name, Resource.from_contents(body)) for name, body in schemas.items()
    )
    # Relative references resolve against each schema's $id.
    registry = registry.with_resources(
        (body["$id"], Resource.from_contents(body)) for body in schemas.values()
    )
    return schemas, registry


def main():
    binary = pathlib.Path(sys.argv[1])
    root = pathlib.Path(sys.argv[2])
    schemas, registry = load_schemas(root)

    def validator(name):
        cls = jsonschema.validators.validator_for(schemas[name])
        cls.check_schema(schemas[name])
        return cls(schemas[name], registry=registry)

    network = validator("network.schema.json")
    strategy = validator("strategy.schema.json")
    certificate = validator("certificate.schema.json")
    report = validator("report.schema.json")
    failures = []

    def check(v, doc, what):
        errors = sorted(v.iter_errors(doc), key=str)
        if errors:
            failures.append(f"{what}: {errors[0].message}")
        else:
            print(f"ok {what}")

    def run(args, expect):
        proc = subprocess.run([str(binary), *args], capture_output=True, text=True)
        if proc.returncode != expect:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}, expected {expect}")
        return proc.stdout

    fixtures = root / "fixtures"
    for path in sorted(fixtures.glob("*.json")):
        doc = json.loads(path.read_text())
        v = strategy if doc.get("kind") == "strategy" else network
        check(v, doc, f"fixture {path.name}")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        generated = {
            "sat.json": ["gen", "sat", "--vars", "3", "--clauses", "1 2 3"],
            "tqbf.json": ["gen", "tqbf", "--prefix", "A E", "--clauses", "1 -2, -1 2"],
            "gamma2.json": ["gen", "gamma-n", "--n", "2"],
            "chytn.json": ["gen", "random", "--kind", "chytn", "--seed", "7"],
            "hytn.json": ["gen", "random", "--kind", "hytn", "--seed", "7"],
            "stn.json": ["gen", "random", "--kind", "stn", "--seed", "7"],
        }
        for name, args in generated.items():
            run([*args, "--out", str(tmp / name)], 0)
            check(network, json.loads((tmp / name).read_text()), f"generated {name}")

        bad_stn = tmp / "bad_stn.json"
        bad_stn.write_text(json.dumps({
            "format_version": 1, "kind": "stn",
            "nodes": [{"id": "u"}, {"id": "v"}],
            "constraints": [
                {"tail": "u", "heads": [{"node": "v", "weight": 1}]},
                {"tail": "v", "heads": [{"node": "u", "weight": -2}]},
            ],
        }))
        bad_hytn = tmp / "bad_hytn.json"
        bad_hytn.write_text(json.dumps({
            "format_version": 1, "kind": "hytn",
            "nodes": [{"id": "u"}, {"id": "v"}, {"id": "x"}],
            "constraints": [
                {"tail": "u", "heads": [{"node": "v", "weight": -1}, {"node": "x", "weight": -1}]},
                {"tail": "v", "heads": [{"node": "u", "weight": -1}]},
                {"tail": "x", "heads": [{"node": "u", "weight": -1}]},
            ],
        }))

        cases = [
            (["check-stn", str(tmp / "stn.json")], None),
            (["check-stn", str(bad_stn)], 1),
            (["check-hytn", str(tmp / "hytn.json")], None),
            (["check-hytn", str(bad_hytn)], 1),
            (["check-dc", str(fixtures / "gamma0.json")], 0),
            (["check-dc", str(fixtures / "gamma1.json")], 0),
            (["check-eps-dc", "--eps", "1/1", str(fixtures / "gamma_half.json")], 1),
            (["check-eps-dc", "--eps", "1/2", str(fixtures / "gamma_half.json")], 0),
            (["eps-bracket", "--max-denominator", "8", str(fixtures / "gamma_half.json")], 0),
            (["verify-strategy", "--strategy", str(fixtures / "gamma1_strategy.json"), str(fixtures / "gamma1.json")], 0),
            (["verify-strategy", "--strategy", str(fixtures / "gamma_half_strategy.json"), "--eps", "3/4",
              str(fixtures / "gamma_half.json")], 1),
            (["validate", str(fixtures / "gamma0.json")], 0),
            (["check-dc", str(tmp / "missing.json")], 2),
            (["check-dc", str(tmp / "tqbf.json")], 2),
        ]
        for args, expect in cases:
            proc = subprocess.run([str(binary), *args, "--json"], capture_output=True, text=True)
            if expect is not None and proc.returncode != expect:
                failures.append(f"{args[0]}: exit {proc.returncode}, expected {expect}")
            doc = json.loads(proc.stdout)
            check(report, doc, f"report {args[0]} exit {proc.returncode}")
            if "certificate" in doc:
                check(certificate, doc["certificate"], f"certificate from {args[0]}")
            if "strategy" in doc:
                check(strategy, doc["strategy"], f"strategy from {args[0]}")

        out_cert = tmp / "cert.json"
        run(["check-eps-dc", "--eps", "1", "--out", str(out_cert), str(fixtures / "gamma_half.json")], 1)
        check(certificate, json.loads(out_cert.read_text()), "certificate file from --out")

    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
