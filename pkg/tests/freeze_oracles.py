"""Regenerate tests/data/frozen_oracles.json from the sympy oracles.

Run by hand (``python3 tests/freeze_oracles.py``); the test-suite reads the
frozen file and also re-derives a sample to catch drift.
"""

import json
from pathlib import Path

import oracles

SNF_CASES = [
    [["t", "1"], ["0", "t"]],
    [["t^2 - 1", "t - 1"], ["t + 1", "0"], ["0", "t"]],
    [["t", "0", "0"], ["0", "t^2", "0"], ["0", "0", "t - 1"]],
    [["t^2", "t"], ["t", "1"]],
    [["t - 2", "1", "0"], ["0", "t - 2", "0"], ["0", "0", "t + 1"]],
    [["t^3 - t", "t^2"], ["t", "t - 1"]],
    [["2*t + 1", "t^2 + 1"], ["t^2 + 1", "1/2*t^3"]],
    [["t^2 + 1", "0"], ["0", "t^2 + 1"], ["t", "t"]],
    [["0", "0"], ["0", "t^4 - 1"]],
    [["1/3*t - 1", "t"], ["t", "3*t^2 - t"]],
]

CYCLIC_PAIRS = [("t^2", "t^2"), ("t - 1", "t + 2"), ("t^3 - t", "t^2 - 1"), ("t^2 + 1", "t^4 - 1"), ("(t - 2)^2", "t - 2")]

ENDOS = {
    "J2(0)": [[0, 1], [0, 0]],
    "J2(2)": [[2, 1], [0, 2]],
    "J3(0)": [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "C(t^2-1)": [[0, 1], [1, 0]],
    "diag(1,2,2)": [[1, 0, 0], [0, 2, 0], [0, 0, 2]],
    "[4]": [[4]],
    "[2]": [[2]],
}

SUBSTITUTIONS = [("t - 4", "s^2"), ("(t - 2)^2", "s^2"), ("t^2", "0"), ("t^2 + t", "s^3 - s"), ("t - 1", "2*s + 1")]


def build():
    out = {"snf": [], "tensor_cyclic": [], "coeq": [], "hom": [], "derived": [], "substitution": []}
    for rows in SNF_CASES:
        out["snf"].append({"matrix": rows, "factors": oracles.factors(rows), "minors": oracles.determinantal_factors(rows)})
    for p, q in CYCLIC_PAIRS:
        out["tensor_cyclic"].append({"p": p, "q": q, "gcd": oracles.compose_gcd(p, q)})
    for a, A in ENDOS.items():
        out["derived"].append({"endo": a, "matrix": A, "h": [list(oracles.ker_coker(A, al)) for al in (0, 1, 2)]})
        for b, B in ENDOS.items():
            out["coeq"].append({"m": a, "n": b, "dim": oracles.coeq_dim(A, B)})
            out["hom"].append({"m": a, "n": b, "dim": oracles.hom_dim(A, B)})
    for p, img in SUBSTITUTIONS:
        out["substitution"].append({"p": p, "image": img, "result": oracles.substitute(p, img)})
    out["endos"] = ENDOS
    return out


if __name__ == "__main__":
    path = Path(__file__).parent / "data" / "frozen_oracles.json"
    path.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {path}")
