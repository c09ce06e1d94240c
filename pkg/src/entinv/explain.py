"""Step-by-step kernel report for three-qubit states.

Given a (2,2,2) state, instantiate all six flattening constraint systems
and the 12-row triple-intersection system with the state's coefficients
substituted in, report every kernel dimension, match the signature to its
branch of the three-qubit case analysis, and name the class.
"""

from __future__ import annotations

from itertools import product

from .invariants import signature, triple_constraint_matrix
from .tensors import ArityError, FlatteningSpec, Tensor, flatten


def _case_for(singles: tuple[int, int, int], triple: int) -> str:
    if singles == (2, 2, 2):
        return "1"
    if singles == (1, 1, 1):
        return "2.2"
    if tuple(sorted(singles)) == (0, 0, 1):
        return "2.3"
    if singles == (0, 0, 0) and triple == 1:
        return "3.1"
    if singles == (0, 0, 0) and triple == 0:
        return "3.2"
    return "unmatched"


def _term(field, coeff, var: str) -> str:
    s = field.format(coeff)
    if s == "1":
        return var
    if s == "-1":
        return f"-{var}"
    if any(ch in s[1:] for ch in "+-"):
        s = f"({s})"
    return f"{s}*{var}"


def _equation(field, row, variables) -> str:
    parts = []
    for coeff, var in zip(row, variables):
        if coeff:
            parts.append(_term(field, coeff, var))
    if not parts:
        return "0 = 0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out + " = 0"


def _variables(positions: tuple[int, ...]) -> list[str]:
    # for (2,2,2) every factor has dimension 2
    names = []
    for combo in product((1, 2), repeat=len(positions)):
        names.append("w" + "".join(str(j) for j in combo))
    return names


def explain_three_qubit(v: Tensor) -> dict:
    """Structured kernel walkthrough of a (2,2,2) state."""
    if v.shape.dims != (2, 2, 2):
        raise ArityError(f"the walkthrough covers (2,2,2) states only, got {v.shape.dims}")
    sig = signature(v)

    coeff_names = []
    for index, c in zip(v.shape.indices(), v.coeffs):
        if c:
            name = "v" + "".join(str(i + 1) for i in index)
            coeff_names.append(f"{name}={v.field.format(c)}")

    systems = []
    kernel_names = {
        (1,): "K1", (2,): "K2", (3,): "K3",
        (1, 2): "K12", (1, 3): "K13", (2, 3): "K23",
    }
    single_dims = dict(zip((1, 2, 3), sig.singles))
    pair_dims = dict(zip(((1, 2), (1, 3), (2, 3)), sig.pairs))
    for rows in ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3)):
        spec = FlatteningSpec(rows, 3)
        # the constraint system on w in the row-side space is the
        # complementary flattening
        constraints = flatten(v, spec.complement())
        variables = _variables(rows)
        equations = [
            _equation(v.field, constraints.row(i), variables) for i in range(constraints.rows)
        ]
        dim = single_dims[rows[0]] if len(rows) == 1 else pair_dims[rows]
        systems.append(
            {
                "kernel": kernel_names[rows],
                "space": "(x)".join(f"V{i}" for i in rows),
                "variables": variables,
                "equations": equations,
                "dim": dim,
            }
        )

    triple_m = triple_constraint_matrix(v)
    triple_vars = _variables((1, 2, 3))
    triple_equations = [
        _equation(v.field, triple_m.row(i), triple_vars) for i in range(triple_m.rows)
    ]

    case = _case_for(sig.singles, sig.triple)
    label = {
        "1": "C0", "2.2": "C1", "3.1": "C5", "3.2": "C6",
    }.get(case)
    if case == "2.3":
        label = {(0, 0, 1): "C2", (0, 1, 0): "C3", (1, 0, 0): "C4"}[sig.singles]

    return {
        "field": v.field.descriptor,
        "dims": list(v.shape.dims),
        "coefficients": coeff_names,
        "systems": systems,
        "triple_system": {"equations": triple_equations, "dim": sig.triple},
        "signature": str(sig),
        "case": case,
        "class": label,
    }


def render_explain_text(data: dict) -> str:
    lines = []
    lines.append(f"three-qubit kernel walkthrough (field: {data['field']})")
    coeffs = ", ".join(data["coefficients"]) if data["coefficients"] else "all zero"
    lines.append(f"nonzero coefficients: {coeffs}")
    lines.append("")
    for system in data["systems"]:
        lines.append(f"{system['kernel']}: constraints on w in {system['space']} "
                     f"(variables {', '.join(system['variables'])})")
        for eq in system["equations"]:
            lines.append(f"    {eq}")
        lines.append(f"  dim {system['kernel']} = {system['dim']}")
    lines.append("")
    lines.append("K123: joint constraints on w in V1(x)V2(x)V3 "
                 f"({len(data['triple_system']['equations'])} rows)")
    for eq in data["triple_system"]["equations"]:
        lines.append(f"    {eq}")
    lines.append(f"  dim K123 = {data['triple_system']['dim']}")
    lines.append("")
    lines.append(f"signature: {data['signature']}")
    lines.append(f"case analysis branch: {data['case']}")
    lines.append(f"class: {data['class']}")
    return "\n".join(lines)
