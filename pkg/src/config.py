"""
Configuration file for equitel
Reference-frame-independent teleportation toolkit
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# ===== PROJECT PATHS =====
PROJECT_ROOT = Path(__file__).parent.parent

OUTPUT_DIR = Path(os.getenv("EQUITEL_OUTPUT_DIR", PROJECT_ROOT / "outputs"))
REPORTS_DIR = OUTPUT_DIR / "reports"
TRANSCRIPTS_DIR = OUTPUT_DIR / "transcripts"
CATALOG_DIR = OUTPUT_DIR / "catalog"

# ===== NUMERICAL TOLERANCES =====
TOLERANCE = float(os.getenv("EQUITEL_TOLERANCE", 1e-9))  # equality, orthogonality
UNIT_NORM_TOLERANCE = 1e-12  # |axis| = 1, canonical hemisphere ties
ROOT_TOLERANCE = 1e-12  # bisection residual for OEB heights
TARGET_MATCH_TOLERANCE = 1e-6  # |Tr(U_j^† ρ(g)^† U_i ρ(g))| ≈ n in τ-discovery
FLOAT_CHARACTER_TOLERANCE = 1e-6  # float fallback for character matching
LEAKAGE_TV_BOUND = 0.02

# ===== GROUPS =====
GROUP_SIZE_CAP = int(os.getenv("EQUITEL_GROUP_SIZE_CAP", 10_000))
MAX_EXACT_ROOT_ORDER = 60  # roots of unity of order <= 60 are stored exactly

# ===== RANDOMNESS =====
DEFAULT_SEED = int(os.getenv("EQUITEL_SEED", 7))
LEAKAGE_SAMPLES = 100_000
NONEXISTENCE_SEARCH_TRIALS = 100_000
CONTINUOUS_FAMILY_SAMPLES = 50

# ===== CLI EXIT CODES =====
EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 2
EXIT_SCHEMA_ERROR = 3
EXIT_NO_SOLUTION = 4

# ===== OEB FAMILIES =====
# Tags for every row of the qubit classification
FAMILY_TAGS = [
    "trivial-(1,1,1,1)",
    "Z2-(1,1,1,1)",
    "Z2-(2,1,1)",
    "Z2-(2,2)",
    "Z3-(3,1)",
    "Z4-(2,1,1)",
    "D2-(1,1,1,1)",
    "D2-(2,1,1)",
    "D2-(2,2)",
    "D2-(4)",
    "D3-(3,1)",
    "D4-(2,1,1)",
    "D4-(2,2)",
    "tetrahedral-(4)",
    "octahedral-(1,3)",
]

DISCRETE_GROUP_TAGS = ["D2", "D3", "D4", "A4", "S4"]

# Qubit classification reference rows: image class -> expected solutions
TABLE1_REFERENCE = [
    {"image": "Trivial", "orbit_type": "(1,1,1,1)", "solutions": "any UEB"},
    {"image": "Z2", "orbit_type": "(1,1,1,1)", "solutions": "one 2-parameter family"},
    {"image": "Z2", "orbit_type": "(2,1,1)", "solutions": "one 2-parameter family"},
    {"image": "Z2", "orbit_type": "(2,2)", "solutions": "one 2-parameter family"},
    {"image": "Z3", "orbit_type": "(3,1)", "solutions": "one 2-parameter family"},
    {"image": "Z4", "orbit_type": "(2,1,1)", "solutions": "one 2-parameter family"},
    {"image": "Zn, n>=5", "orbit_type": "-", "solutions": "No solutions"},
    {"image": "D2", "orbit_type": "(1,1,1,1)", "solutions": "1 isolated"},
    {"image": "D2", "orbit_type": "(2,1,1)", "solutions": "6 isolated"},
    {"image": "D2", "orbit_type": "(2,2)", "solutions": "3 isolated"},
    {"image": "D2", "orbit_type": "(4)", "solutions": "2 isolated"},
    {"image": "D3", "orbit_type": "(3,1)", "solutions": "6 isolated"},
    {"image": "D4", "orbit_type": "(2,1,1)", "solutions": "2 isolated"},
    {"image": "D4", "orbit_type": "(2,2)", "solutions": "2 isolated"},
    {"image": "Dn, n>=5", "orbit_type": "-", "solutions": "No solutions"},
    {"image": "Tetrahedral (A4)", "orbit_type": "(4)", "solutions": "2 isolated"},
    {"image": "Octahedral (S4)", "orbit_type": "(1,3)", "solutions": "1 isolated"},
    {"image": "Icosahedral (A5)", "orbit_type": "-", "solutions": "No solutions"},
]

# Expected isolated-solution counts per discrete group, by orbit type,
# counted by the case labels of the classification
DISCRETE_CATALOG_COUNTS = {
    "D2": {(1, 1, 1, 1): 1, (2, 1, 1): 6, (2, 2): 3, (4,): 2},
    "D3": {(3, 1): 6},
    "D4": {(2, 1, 1): 2, (2, 2): 2},
    "A4": {(4,): 2},
    "S4": {(3, 1): 1},
}

# Distinct point sets in the standard embedding (flip axis x). Some of the six D3
# case labels give the same point set: a vertex on the flip line at azimuth 0 and
# at 2pi/3 give the same triangle.
DISCRETE_DISTINCT_COUNTS = {"D2": 12, "D3": 4, "D4": 4, "A4": 2, "S4": 1}

# Average fidelity of the conventional protocol on |0> with the worked Z3
# basis when Bob's frame is off by a uniformly random element of Z3:
# 1/4 from the diagonal correction plus 3/4 * (1 + 1/3 + 1/3) / 3
MISALIGNED_Z3_FIDELITY = 2 / 3

# ===== REPORT TEMPLATES =====
TABLE1_MARKDOWN_TEMPLATE = """# Equivariant OEBs for qubit representations

seed: {{ seed }} | tolerance: {{ tolerance }}

| Image of q∘ρ | Orbit type | Solutions | Verified | Max residual |
|---|---|---|---|---|
{% for row in rows -%}
| {{ row.image }} | {{ row.orbit_type }} | {{ row.solutions }} | {{ row.verified }} | {{ "%.2e"|format(row.max_residual) }} |
{% endfor %}
{% if notes %}
## Notes
{% for note in notes -%}
- {{ note }}
{% endfor %}
{% endif %}
{% if refusals %}
## Refusals
{% for r in refusals -%}
- **{{ r.group }}**: {{ r.reason }}
{% endfor %}
{% endif %}
"""

SWEEP_MARKDOWN_TEMPLATE = """# Teleportation sweep

seed: {{ seed }} | tolerance: {{ tolerance }} | runs: {{ runs }}

| g | outcomes | min fidelity | mean fidelity |
|---|---|---|---|
{% for row in rows -%}
| {{ row.g }} | {{ row.outcomes }} | {{ "%.12f"|format(row.min_fidelity) }} | {{ "%.12f"|format(row.mean_fidelity) }} |
{% endfor %}
"""

VERDICT_MARKDOWN_TEMPLATE = """# {{ title }}

seed: {{ seed }} | tolerance: {{ tolerance }}

verdict: **{{ verdict }}**
{% for key, value in details.items() -%}
- {{ key }}: {{ value }}
{% endfor %}
"""
