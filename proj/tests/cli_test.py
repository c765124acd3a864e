"""End-to-end checks of the treejacobi command line.

usage: cli_test.py <treejacobi binary> <source dir>
"""

import json
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

import jsonschema

BIN, SRC = sys.argv[1], sys.argv[2]
DATA = os.path.join(SRC, "tests", "data")
SCHEMA = json.load(open(os.path.join(SRC, "docs", "report.schema.json")))
failures = []


def run(*args, env=None):
    proc = subprocess.run([BIN, *args], capture_output=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr.decode()


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def report(*args, code=0):
    rc, out, err = run(*args)
    expect(rc == code, f"{' '.join(args)}: exit {rc} (want {code})")
    doc = json.loads(out)
    try:
        jsonschema.validate(doc, SCHEMA)
        expect(True, f"{args[0]}: schema")
    except jsonschema.ValidationError as e:
        expect(False, f"{args[0]}: schema ({e.message})")
    rc2, out2, _ = run(*args)
    expect(rc2 == rc and out2 == out, f"{args[0]}: byte-identical rerun")
    return doc


def poly(coeffs):
    return [Fraction(c) for c in coeffs]


star = os.path.join(DATA, "star.json")
leaf = os.path.join(DATA, "leaf.json")
rand = os.path.join(DATA, "random.json")

# Star: spectrum factors z^2 - 2 and z, char_poly z^3 - 2z.
d = report("spectrum", "--tree", star, "--at", "x", "--verify")
r = d["results"]
expect(poly(r["part_a"]["poly"]) == [-2, 0, 1], "star part_a = z^2 - 2")
expect([poly(f["factor"]) for f in r["part_b"]] == [[0, 1]], "star part_b = z")
expect(poly(r["char_poly"]) == [0, -2, 0, 1], "star char_poly = z^3 - 2z")
expect(r["identity"] is True, "star identity verdict")

d = report("poly", "--tree", leaf, "--at", "v")
expect(poly(d["results"]["table"][0]["diag"]) == [1], "leaf P_vv = 1")
d = report("poly", "--tree", star, "--target", "a")
expect(poly(d["results"]["poly"]) == [1], "star P_{x,a} = P_xx / P_ax = 1")
d = report("poly", "--tree", rand, "--full")
expect("below" in d["results"]["table"][0], "--full adds the complete table")

d = report("solve", "--tree", rand, "--z", "0/1+1/1i")
expect(d["results"]["v"]["on_path"][0] == "1/1+0/1i", "v(x0) = 1")
d = report("wronskian", "--tree", rand, "--z", "1/2+3/1i")
expect(all(row["wronskian"] == row["expected"] for row in d["results"]["rows"]), "Wronskian rows")

d = report("growth", "--generator", "homogeneous:2", "--depths", "3..8")
norms = [Fraction(row["norm2"]) for row in d["results"]["rows"]]
expect(all(a < b for a, b in zip(norms, norms[1:])), "growth norms increase")
report("growth", "--generator", "theorem3", "--depths", "1..5")

d = report("classical", "--rule", "lemma5", "--q", "2", "--a", "1", "--depth", "20", "--report", "pq0")
expect(len(d["results"]["p"]) == 21, "pq0 has 21 values")
report("classical", "--report", "kernel", "--depth", "30")
a = report("classical", "--report", "even", "--seed", "3")
b = report("classical", "--report", "even", "--seed", "4")
expect(a["results"]["seeds"] != b["results"]["seeds"], "--seed changes the random draws")

with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "t3.json")
    d = report("construct", "--example", "theorem3", "--depth", "4", "--out", out)
    expect(all(Fraction(x) <= 1 - Fraction(1, 2**n) for n, x in enumerate(d["results"]["ledger"]) if n >= 1),
           "theorem3 ledger within budget")
    d = report("verify-all", "--tree", out, "--seed", "7")
    names = {c["name"]: c for c in d["checks"]}
    expect(not names["sign_structure"].get("skipped"), "beta = 0 tree runs the sign check")
    out = os.path.join(tmp, "p5.json")
    d = report("construct", "--example", "prop5", "--depth", "3", "--out", out)
    expect(d["results"]["obstruction"] == "y0", "prop5 obstruction at y0")
    report("construct", "--example", "decorated", "--depth", "5", "--params", "family=lemma5")
    # The literal path perturbation has diverging partial sums: exit 1.
    report("construct", "--example", "remark2", "--depth", "2", code=1)

d = report("verify-all", "--tree", rand, "--seed", "7")
rc, single, _ = run("verify-all", "--tree", rand, "--seed", "7", env={**os.environ, "TREEJACOBI_THREADS": "1"})
expect(json.loads(single) == d, "thread cap does not change the report")

for args in (["bogus"], ["spectrum"], ["poly", "--tree", star, "--at", "nowhere"], ["growth", "--depths", "x"],
             ["spectrum", "--tree", os.path.join(DATA, "missing.json")]):
    rc, out, err = run(*args)
    expect(rc == 2 and out == b"" and err, f"{' '.join(args)}: usage error exit 2")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
