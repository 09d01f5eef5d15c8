#!/usr/bin/env python3
"""Regenerates the illustrative platform fixtures under data/fixtures/.

Every value here is a hand-authored placeholder chosen to exercise the
pipeline; none of it is measured platform data.
"""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
CATALOG = json.loads((ROOT / "data" / "catalog" / "default_catalog.json").read_text())
ATTACKS = [a["id"] for a in CATALOG["attacks"]]
DEFENSES = [d["id"] for d in CATALOG["defenses"]]
LAYERS = CATALOG["layers"]


def layer_of(identifier):
    return identifier.split("-")[0]


# per-layer default implementation level, then per-defense exceptions
PLATFORMS = {
    "digit": {
        "platform": "Digit",
        "layer_mu": {"P": 0.25, "SP": 0.5, "DP": 0.5, "MW": 0.75, "DM": 1.0, "AP": 0.75, "SI": 0.5},
        "mu": {"P-D1": 0.75, "DP-D1": 0.25, "DM-D3": 0.25, "SI-D5": 0.25},
        "inapplicable": ["DM-A10", "SI-A4"],
        "overrides": {"DM-A4": {"likelihood": 0.7}},
        "mitigation": 0.3,
    },
    "g1_edu": {
        "platform": "G1 EDU",
        "layer_mu": {"P": 0.25, "SP": 0.25, "DP": 0.5, "MW": 0.25, "DM": 0.25, "AP": 0.75, "SI": 0.25},
        "mu": {"AP-D2": 0.25, "AP-D5": 0.25, "DM-D6": 0.0, "DM-D7": 0.0, "MW-D1": 0.5},
        "inapplicable": ["DM-A10", "SI-A5"],
        "overrides": {"AP-A2": {"likelihood": 0.9}},
        "mitigation": 0.15,
    },
    "pepper": {
        "platform": "Pepper",
        "layer_mu": {"P": 0.25, "SP": 0.25, "DP": 0.25, "MW": 0.0, "DM": 0.25, "AP": 0.75, "SI": 0.5},
        "mu": {"MW-D1": 0.25, "DP-D2": 0.0, "AP-D2": 0.5},
        "inapplicable": ["DM-A2", "DM-A10", "DM-A4", "SP-A1", "P-A5"],
        "overrides": {"MW-A2": {"likelihood": 0.8, "impact": 0.8}},
        "mitigation": 0.05,
    },
}

# structural feasibility: adjacent layers couple strongly, distant ones weakly
def structural():
    s = [[0.0] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(7):
            d = abs(i - j)
            s[i][j] = {0: 1.0, 1: 0.9, 2: 0.5, 3: 0.3}.get(d, 0.1)
    return s


# observed propagation evidence along the upward control chain
EVIDENCE_EDGES = {
    ("P", "SP"): 0.8, ("SP", "DP"): 0.9, ("DP", "DM"): 0.9, ("DM", "AP"): 0.7,
    ("AP", "SI"): 0.5, ("MW", "DM"): 0.6, ("DP", "MW"): 0.5, ("MW", "AP"): 0.5,
    ("SI", "AP"): 0.6, ("AP", "DM"): 0.5, ("P", "DP"): 0.4, ("SP", "DM"): 0.5,
    ("DM", "P"): 0.4, ("SI", "DM"): 0.3,
}


def evidence():
    e = [[0.0] * 7 for _ in range(7)]
    for i in range(7):
        e[i][i] = 1.0
    for (a, b), v in EVIDENCE_EDGES.items():
        e[LAYERS.index(a)][LAYERS.index(b)] = v
    return e


def mitigation(level, name):
    m = [[level] * 7 for _ in range(7)]
    for i in range(7):
        m[i][i] = 0.0
    if name == "digit":
        m[LAYERS.index("DM")][LAYERS.index("AP")] = 0.0
    if name == "pepper":
        m[LAYERS.index("SP")][LAYERS.index("DP")] = 0.0
        m[LAYERS.index("MW")][LAYERS.index("AP")] = 0.0
    return m


def main():
    out = ROOT / "data" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    for key, spec in PLATFORMS.items():
        mu = {d: spec["mu"].get(d, spec["layer_mu"][layer_of(d)]) for d in DEFENSES}
        z = {a: 0 if a in spec["inapplicable"] else 1 for a in ATTACKS}
        assessment = {
            "platform": spec["platform"],
            "applicability": z,
            "implementation": mu,
            "overrides": spec["overrides"],
            "notes": "Illustrative fixture; values are placeholders, not measurements.",
        }
        (out / f"{key}.assessment.json").write_text(json.dumps(assessment, indent=2) + "\n")
        coupling = {
            "alpha": 0.6,
            "beta": 0.4,
            "S": structural(),
            "E": evidence(),
            "M": mitigation(spec["mitigation"], key),
            "illustrative": True,
            "notes": f"Illustrative coupling for {spec['platform']}.",
        }
        (out / f"{key}.coupling.json").write_text(json.dumps(coupling, indent=2) + "\n")
    print("wrote fixtures:", ", ".join(PLATFORMS))


if __name__ == "__main__":
    main()
