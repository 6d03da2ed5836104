#!/usr/bin/env python3
"""Validate the sample inputs and the CLI's JSON outputs against schemas/."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
SCHEMA = json.loads((ROOT / "schemas" / "limitkit.schema.json").read_text())
validator_cls = jsonschema.validators.validator_for(SCHEMA)
validator_cls.check_schema(SCHEMA)


def check(doc, definition, what):
    schema = dict(SCHEMA)
    schema["$ref"] = f"#/$defs/{definition}"
    errors = list(validator_cls(schema).iter_errors(doc))
    if errors:
        print(f"FAIL {what}: {errors[0].message}")
        return False
    print(f"ok   {what}")
    return True


SAMPLE_KINDS = {
    "z2.json": "presentation",
    "torsion.json": "presentation",
    "genus2.json": "presentation",
    "double.json": "presentation",
    "double_splitting.json": "splitting",
    "double_retraction.json": "hom",
    "double_twist.json": "twist",
    "z2_hom_3_5.json": "hom",
    "z2_kill_b.json": "factor_set",
    "z2_transvections.json": "twists",
}


def run(cli, args, expected_code):
    p = subprocess.run([cli, "--json", *args], capture_output=True, text=True)
    if p.returncode != expected_code:
        print(f"FAIL {' '.join(args)}: exit {p.returncode}, expected {expected_code}\n{p.stderr}")
        return None
    return json.loads(p.stdout)


def main():
    cli = sys.argv[1]
    ok = True
    for path in sorted(SAMPLES.glob("*.json")):
        kind = "clg_certificate" if path.name.startswith("clg_") else SAMPLE_KINDS.get(path.name)
        if kind is None:
            print(f"FAIL {path.name}: no schema assigned")
            ok = False
            continue
        ok &= check(json.loads(path.read_text()), kind, path.name)

    s = lambda n: str(SAMPLES / n)
    commands = [
        (["stallings", "fold", "--gens", "a", "b^2", "b a b^-1"], 0, "core_graph"),
        (["lattice", "snf", "--matrix", "[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]"], 0, "smith_form"),
        (["pres", "factor-abelian", "--hom", s("z2_hom_3_5.json")], 0, None),
        (["gad", "twist", "--splitting", s("double_splitting.json"), "--z", "a b a^-1 b^-1"], 0, "twist"),
        (["mr", "verify", "--hom", s("z2_hom_3_5.json"), "--abelian"], 0, "mr_report"),
        (["mr", "search", "--hom", s("z2_hom_3_5.json"), "--factors", s("z2_kill_b.json"),
          "--twists", s("z2_transvections.json"), "--depth", "8"], 0, "modular_search"),
        (["mr", "shorten", "--hom", s("z2_hom_3_5.json"), "--twists", s("z2_transvections.json"),
          "--depth", "2"], None, "shorten"),
        (["mr", "factorset", "--pres", s("genus2.json"), "--kernel", "a1"], 0, "factor_set"),
        (["clg", "check", "--cert", s("clg_genus2.json")], 0, "clg_report"),
        (["clg", "check", "--cert", s("clg_genus2_abelian_qh.json")], 1, "clg_report"),
        (["clg", "check", "--cert", s("clg_rigid_envelope_bad.json")], 1, "clg_report"),
        (["probe", "orf", "--pres", s("z2.json"), "--subset", "a", "b", "a b"], 0, "hom_search"),
        (["probe", "rf", "--pres", s("torsion.json"), "--word", "a", "--max-len", "10"], 1, "hom_search"),
        (["probe", "stable", "--hom", s("double_retraction.json"), "--twist", s("double_twist.json"),
          "--range", "0..10", "--word", "a c a^-1 c^-1"], 0, "stable_probe"),
    ]
    for args, code, kind in commands:
        if code is None:
            p = subprocess.run([cli, "--json", *args], capture_output=True, text=True)
            out = json.loads(p.stdout) if p.returncode in (0, 1) else None
        else:
            out = run(cli, args, code)
        if out is None:
            ok = False
            continue
        if kind:
            ok &= check(out, kind, " ".join(args[:2]))
        if kind == "mr_report":
            ok &= check(out["diagram"], "mr_diagram", "mr verify diagram")
            ok &= check(out["witness"], "branch_witness", "mr verify witness")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
