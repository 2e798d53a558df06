"""
render.py - JSON and text rendering of command payloads.

JSON floats use Python's shortest round-trip repr. The text form is rendered
from jinja2 templates kept in this module.
"""

import json
from fractions import Fraction
from typing import Any, Dict

import numpy as np
from jinja2 import BaseLoader, Environment

GLOBAL_ENV = Environment(loader=BaseLoader(), autoescape=False, trim_blocks=True, lstrip_blocks=True)  # nosec B701
GLOBAL_ENV.filters["num"] = lambda x: repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)
GLOBAL_ENV.filters["cx"] = lambda z: f"{z['re']!r}{'+' if z['im'] >= 0 else '-'}{abs(z['im'])!r}i"
GLOBAL_ENV.filters["pts"] = lambda s: " ".join("(" + ",".join(str(v) for v in p) + ")" for p in s)


def _default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, default=_default) + "\n"


TEMPLATES: Dict[str, str] = {
    "generic": """
{% for key, value in payload.items() %}
{{ key }}: {{ value }}
{% endfor %}
""",
    "analyze": """
n = {{ payload.n }}, N = {{ payload.N }}, sizes {{ payload.sizes }}
lattice rank {{ payload.lattice.rank }}, index {{ payload.lattice.index }}, e1 in L: {{ payload.unit_in_lattice }}
lacunary: {{ payload.lacunary }}
{% if payload.square %}
MV = {{ payload.mv }}
triangular witness: {{ payload.triangular }}
{% if payload.tal_candidate is defined %}
strictly triangular witness: {{ payload.strictly_triangular }}
{% for level, members in payload.offsets.items() %}
offset {{ level }}:
{% for m in members %}
  A{{ loop.index }}: {{ m | pts }}
{% endfor %}
{% endfor %}
TAL candidate (abundant: {{ payload.tal_candidate_abundant }}):
{% for m in payload.tal_candidate.supports %}
  A{{ loop.index }}: {{ m | pts }}
{% endfor %}
unnecessary candidate (abundant: {{ payload.unnecessary_candidate_abundant }}):
{% for m in payload.unnecessary_candidate.supports %}
  A{{ loop.index }}: {{ m | pts }}
{% endfor %}
essential complement: {{ payload.essential_complement }}
monodromy outlook: {{ payload.monodromy_outlook }}
{% endif %}
{% else %}
not square
{% endif %}
""",
    "mixedvol": """
MV = {{ payload.mv }}
""",
    "solve": """
{{ payload.certified_count }} of MV = {{ payload.mv }} torus solutions{% if payload.possibly_incomplete %} (possibly incomplete){% endif %}

{% for p in payload.points %}
{{ loop.index }}: {% for c in p %}{{ c | cx }} {% endfor %} residual {{ payload.residuals[loop.index0] | num }}
{% endfor %}
""",
    "trace_test": """
{{ payload.algorithm }} trace test: {{ payload.verdict | upper }}
{% for s in payload.samples %}
  t = {{ s.t | num }}: sigma1 = {{ s.sigma1 | cx }}
{% endfor %}
residual {{ payload.collinearity_residual | num }} (tolerance {{ payload.tolerance | num }})
""",
    "pencil": """
t       {% for t in payload.ts %}{{ "%10.3f" | format(t) }}{% endfor %}

Sigma_1 {% for v in payload.sigma1 %}{{ "%10.3f" | format(v.re) }}{% endfor %}

Sigma_2 {% for v in payload.sigma2 %}{{ "%10.3f" | format(v.re) }}{% endfor %}

affine deviation: Sigma_1 {{ payload.sigma1_deviation | num }}, Sigma_2 {{ payload.sigma2_deviation | num }}
""",
    "gallery": """
{% for e in payload.examples %}
{{ e.name }}: {% if not e.asserted %}reported{% elif e.holds %}holds{% else %}FAILS{% endif %} ({{ e.description }})
{% endfor %}
""",
}


def to_text(payload: Dict[str, Any], template: str = "generic") -> str:
    source = TEMPLATES.get(template, TEMPLATES["generic"])
    return GLOBAL_ENV.from_string(source).render(payload=payload).lstrip("\n")


def render(payload: Dict[str, Any], fmt: str = "json", template: str = "generic") -> str:
    if fmt == "text":
        return to_text(json.loads(to_json(payload)), template)
    return to_json(payload)
