"""Built-in example systems, emitted as input documents with symbolic parameters."""

import json

from .errors import UnknownFixture

_Z3 = [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]

# 3x3 system with irregular points 0, 1, -1 of ranks 2, 1, 1 and a regular
# point at infinity (M4 + M5 + M6 = 0).
_M1 = [[-5, -4, -4], [17, 14, 13], [-10, -8, -7]]
_M2 = [[-6, -5, -5], [23, 17, 15], [-14, -9, -7]]
_M3 = [[1, 1, 1], [-11, -7, -6], [8, 4, 3]]
_M4 = [
    ["2*a-c", "a-c", "a-c"],
    ["-3-6*a+5*c", "-2-3*a+5*c", "-2-3*a+5*c"],
    ["3+4*a-3*c", "2+2*a-3*c", "2+2*a-3*c"],
]
_M5 = [
    [0, 0, 0],
    ["b+2", "-b+1", "-2*b+1"],
    ["-b-2", "b-1", "2*b-1"],
]
_M6 = [
    ["-2*a+c", "-a+c", "-a+c"],
    ["-b+6*a+1-5*c", "b+3*a+1-5*c", "2*b+3*a+1-5*c"],
    ["b-4*a-1+3*c", "-b-2*a-1+3*c", "-2*b-2*a-1+3*c"],
]

SEC4_EXAMPLE1 = {
    "dimension": 3,
    "parameters": ["a", "b", "c"],
    "points": [
        {"location": [0, 0], "rank": 2, "coeffs": [_M1, _Z3, _M4]},
        {"location": [1, 0], "rank": 1, "coeffs": [_M2, _M5]},
        {"location": [-1, 0], "rank": 1, "coeffs": [_M3, _M6]},
    ],
}

# Leading terms only; all three are non-resonant, so every formal exponent
# vanishes. The example leaves locations and ranks free: 0, 1, -1 of rank 1.
SEC4_EXAMPLE2 = {
    "dimension": 3,
    "parameters": ["a", "b"],
    "points": [
        {"location": [0, 0], "rank": 1, "coeffs": [[[1, 0, 0], [0, -1, 0], [0, 0, 2]], _Z3]},
        {
            "location": [1, 0],
            "rank": 1,
            "coeffs": [
                [[0, 0, 0], ["3*a", "3+b", 1], ["-3*a*b", "-b^2-5*b", "-2-b"]],
                _Z3,
            ],
        },
        {"location": [-1, 0], "rank": 1, "coeffs": [[[-1, 0, 0], [0, 4, 0], [-2, 0, 1]], _Z3]},
    ],
}

# u'' = (z^2 + c) u after t = 1/z and the shearing t^diag(0,1):
# A(t) = (A0 + A2 t^2) / t^3 with a Fuchsian point at t = oo where A ~ A2 / t.
_A0 = [[0, -1], [-1, 0]]
_A2 = [[0, 0], ["-c", 1]]
SEC2_EXAMPLE1 = {
    "dimension": 2,
    "parameters": ["c"],
    "points": [
        {"location": [0, 0], "rank": 2, "coeffs": [_A0, [[0, 0], [0, 0]], _A2]},
        {"location": "inf", "rank": 0, "coeffs": [_A2]},
    ],
}

# The same equation before shearing, as a polynomial coefficient matrix.
SEC2_EXAMPLE1_RAW = {
    "dimension": 2,
    "parameters": ["c"],
    "points": [],
    "polynomial_part": [[[0, 1], ["c", 0]], [[0, 0], [0, 0]], [[0, 0], [1, 0]]],
}

FIXTURES = {
    "sec2-example1": SEC2_EXAMPLE1,
    "sec2-example1-raw": SEC2_EXAMPLE1_RAW,
    "sec4-example1": SEC4_EXAMPLE1,
    "sec4-example2": SEC4_EXAMPLE2,
}


def fixture_document(name):
    """Decoded fixture document (a fresh copy)."""
    try:
        return json.loads(json.dumps(FIXTURES[name]))
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}"
        ) from None


def fixture_text(name):
    """Fixture as JSON text, one matrix row per line."""
    return _dump(fixture_document(name)) + "\n"


def _dump(doc):
    points = []
    for pt in doc.get("points", []):
        mats = ",\n        ".join(_matrix(m) for m in pt["coeffs"])
        points.append(
            "    {\n"
            f'      "location": {json.dumps(pt["location"])},\n'
            f'      "rank": {pt["rank"]},\n'
            f'      "coeffs": [\n        {mats}\n      ]\n'
            "    }"
        )
    lines = [
        "{",
        f'  "dimension": {doc["dimension"]},',
        f'  "parameters": {json.dumps(doc.get("parameters", []))},',
    ]
    body = '  "points": [' + ("\n" + ",\n".join(points) + "\n  ]" if points else "]")
    if "polynomial_part" in doc:
        lines.append(body + ",")
        mats = ",\n    ".join(_matrix(m) for m in doc["polynomial_part"])
        lines.append(f'  "polynomial_part": [\n    {mats}\n  ]')
    else:
        lines.append(body)
    lines.append("}")
    return "\n".join(lines)


def _matrix(m):
    return "[" + ", ".join(json.dumps(row) for row in m) + "]"
