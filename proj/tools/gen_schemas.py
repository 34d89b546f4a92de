"""Regenerates docs/schemas/*.schema.json and docs/csv.md from real CLI output.

usage: python tools/gen_schemas.py build/renormlab
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

DOCS = Path(__file__).resolve().parent.parent / "docs"

RUNS = [
    ["fixed-point"],
    ["extend"],
    ["shift-family"],
    ["horseshoe"],
    ["renorm"],
    ["diagnose"],
    ["apriori"],
    ["factorize"],
    ["slow", "--d", "geometric:max"],
]

# json file -> (title, producing command)
FILES = {
    "certificate.json": ("Fixed-point certificate", "fixed-point"),
    "tower.json": ("Interval tower of the fixed-point scaling data", "fixed-point"),
    "extend.json": ("Fixed-point extension check", "extend"),
    "shift-family.json": ("Two-symbol shift family check", "shift-family"),
    "horseshoe.json": ("Parameter horseshoe: density and coding", "horseshoe"),
    "renorm.json": ("Renormalization trajectory summary", "renorm"),
    "diagnose.json": ("Regularity profile summary", "diagnose"),
    "apriori.json": ("A priori bounds, multiplicity and cross-ratio survey", "apriori"),
    "factorize.json": ("Quadratic factorization summary", "factorize"),
    "slow.json": ("Slow convergence construction", "slow"),
}

DESCRIPTIONS = {
    "schema_version": "output format version",
    "command": "producing subcommand",
    "config": "effective configuration (every key except outdir)",
    "status": "exit code: 0 success, 1 failure, 2 inconclusive",
    "c_star": "fixed point of c -> R(c)",
    "sigma0": "sigma0 at the fixed point",
    "sigma1": "sigma1 at the fixed point",
    "residual": "|R(c*) - c*|",
    "dRdc": "dR/dc at c* by central difference",
    "identity_defect": "|sigma0^2 - sigma1|",
    "domain": "feasible parameter interval [0, c_max]",
    "levels": "per-level entries",
    "level": "tower level k",
    "I0": "[lo, hi] of I_0^k",
    "I1": "[lo, hi] of I_1^k",
    "x": "new endpoint of I_0^k",
    "y": "endpoint of I_1^k facing the critical point",
    "map": "input map spec",
    "depth": "construction depth",
    "grid": "number of Chebyshev grid points",
    "tol": "tolerance applied to the verdict",
    "dist0_Rg_g": "sup |R g - g| on the grid",
    "covered": "grid points where both maps are defined",
    "lip_nonincreasing": "Lipschitz constants of the gap derivatives never increase",
    "word_length": "length L of the symbol words",
    "words": "number of words",
    "max_dist0_Rf_ftau": "max over words of dist0(R f_w, f_{tau w})",
    "min_pair_distance": "smallest dist0 between two distinct words",
    "injective": "all words give distinct maps",
    "eps0": "eps of branch 0",
    "eps1": "eps of branch 1",
    "c0_star": "fixed point of branch 0",
    "c1_star": "fixed point of branch 1",
    "A0": "domain of branch 0",
    "A1": "domain of branch 1",
    "lambda": "minimal expansion of the branches",
    "dRdc0": "dR/dc at c0*",
    "properness_margin": "smallest triangle-boundary distance of the induced scaling data",
    "density": "density of the dense-word orbit",
    "coding": "coding residuals of random words",
    "reference_depth": "depth D of the reference approximant",
    "reference_c_F": "accumulation parameter used by the reference",
    "note": "how the reference stands in for the fixed point",
    "monotone": "dist0 strictly decreasing along the trajectory",
    "rate": "geometric mean of successive dist0 ratios",
    "final_dist0": "dist0 at the last level",
    "final_budget": "reference self-drift at the last level",
    "points": "profile grid size",
    "E": "second derivative at the critical point",
    "identity_residual": "max |eps - delta - beta|",
    "center_defect": "largest |eps|, |eps_bar|, |delta| in the innermost window",
    "l1_delta": "beta_hat at 0 plus beta_hat at 1",
    "windows": "excluded half-widths around c",
    "partial": "beta_hat mass outside each window",
    "increments": "successive differences of partial",
    "ratio": "geometric mean of successive increment ratios",
    "stable_ratio": "largest ratio counted as stable",
    "stable": "beta_hat converges (C^{2+|.|} plausible)",
    "verdict": "regularity verdict in words",
    "tau": "a priori bound: minimal child ratio and gap ratio",
    "df_spread": "max/min of max |D f^{2^n}| across levels",
    "df_spread_limit": "allowed df_spread",
    "max_multiplicity": "largest intersection multiplicity found",
    "multiplicity_limit": "allowed multiplicity",
    "K": "2 (|phi_+|_1 + |phi_-|_1)",
    "cross_ratio_samples": "number of cross-ratio configurations",
    "min_B_over_bound": "min of B / exp(-K m)",
    "max_m": "largest multiplicity among the cross-ratio towers",
    "sum_phi_decreasing": "sum_phi strictly decreasing in n",
    "sum_q_increment_ratio": "largest ratio of successive sum_q increments",
    "sum_q_bound": "geometric extrapolation of sum_q",
    "sum_q_bounded": "sum_q increments shrink geometrically",
    "c1_gap_decreasing": "|R^n f - f_n|_1 strictly decreasing",
    "d_spec": "lower-bound sequence spec",
    "max_amplitude": "largest realizable d_0",
    "orbit_defect": "max |f^k(c) - ref^k(c)| over the resolved orbit",
    "margins_ok": "every conclusive margin is nonnegative",
    "inconclusive": "some level's budget swamps its margin",
    "beta_hat_ratio": "increment ratio of the beta_hat verdict",
    "beta_hat_increments": "beta_hat increments on level-aligned windows",
    "beta_hat_stable": "beta_hat converges",
    "checks": "individual certificate checks",
    "error": "error kind and message",
    "kind": "error category",
    "message": "human-readable message",
}


def infer(value, key=None):
    if isinstance(value, bool):
        s = {"type": "boolean"}
    elif isinstance(value, int):
        s = {"type": "integer"}
    elif isinstance(value, float):
        s = {"type": "number"}
    elif isinstance(value, str):
        s = {"type": "string"}
    elif isinstance(value, list):
        s = {"type": "array"}
        if value:
            items = infer(value[0])
            # numbers that happen to be integral stay numbers
            if items.get("type") == "integer" and any(isinstance(v, float) for v in value):
                items = {"type": "number"}
            s["items"] = items
    elif isinstance(value, dict):
        s = {
            "type": "object",
            "properties": {k: infer(v, k) for k, v in value.items()},
            "required": list(value),
            "additionalProperties": False,
        }
    else:
        s = {}
    if key == "schema_version":
        s["const"] = value
    if key in DESCRIPTIONS:
        s["description"] = DESCRIPTIONS[key]
    return s


def schema(title, doc):
    s = infer(doc)
    s = {"$schema": "https://json-schema.org/draft/2020-12/schema", "title": title, **s}
    return s


def main():
    exe = Path(sys.argv[1]).resolve()
    out = DOCS / "schemas"
    out.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        for args in RUNS:
            subprocess.run([exe, "--set", f"outdir={tmp}", *args], check=True, capture_output=True)
        for name, (title, _) in FILES.items():
            doc = json.loads(Path(tmp, name).read_text())
            s = schema(title, doc)
            (out / name.replace(".json", ".schema.json")).write_text(json.dumps(s, indent=2) + "\n")
        err = subprocess.run([exe, "slow", "--d", "harmonic"], capture_output=True, text=True)
        s = schema("Error record (stderr, exit 1)", json.loads(err.stderr))
        (out / "error.schema.json").write_text(json.dumps(s, indent=2) + "\n")

    lines = ["# CSV outputs", "",
             "Every CSV starts with `# schema_version: 1.0, command: <name>`, then a header row.",
             "Numbers are printed with 17 significant digits. The same text is in each subcommand's `--help`.", ""]
    for cmd in [r[0] for r in RUNS]:
        text = subprocess.run([exe, cmd, "--help"], capture_output=True, text=True).stdout
        if "CSV columns:" not in text:
            continue
        lines += [f"## {cmd}", "", "| column | meaning |", "|---|---|"]
        for row in text.split("CSV columns:\n", 1)[1].splitlines():
            if not row.startswith("  ") or ": " not in row:
                break
            name, meaning = row.strip().split(": ", 1)
            lines.append(f"| `{name}` | {meaning} |")
        lines.append("")
    (DOCS / "csv.md").write_text("\n".join(lines))


if __name__ == "__main__":
    main()
