"""Exact solve of the flow LP on the compact per-terminal formulation.

Variables are the edge capacities x_e plus, for every terminal t, a flow
f^t_e on each edge that lies on some root-to-t path.  Constraints: flow
conservation at internal vertices, one unit delivered to t, and
f^t_e <= x_e.  This is the polynomial-sized equivalent of the path
formulation; the path view survives only as the witness checker in
`flows.path_witness`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import simplex
from .model import DstInstance, SizeCapError
from .flows import FractionalSolution

# a dense exact tableau is practical up to a few hundred variables; the cap
# is configurable for callers willing to wait
DEFAULT_VAR_CAP = 200


@dataclass(frozen=True)
class LpResult:
    optimal_value: Fraction
    x_opt: FractionalSolution
    duals: tuple
    certified: bool  # exact primal/dual feasibility + equal objectives


def _edges_toward(inst: DstInstance, t: int):
    """Indices of edges on some r->t path (graph is layered, so this is
    exactly the set of edges whose head can still reach t)."""
    back = {t}
    # walk levels upward; edges are sorted by class so a reverse sweep works
    for e in reversed(inst.edges):
        if e.head in back:
            back.add(e.tail)
    return [i for i, e in enumerate(inst.edges) if e.head in back or e.head == t]


def solve_lp_exact(inst: DstInstance, var_cap: int = DEFAULT_VAR_CAP) -> LpResult:
    ne = len(inst.edges)
    terminals = list(inst.terminals)
    rel = {t: _edges_toward(inst, t) for t in terminals}

    nvars = ne + sum(len(r) for r in rel.values())
    if nvars > var_cap:
        raise SizeCapError(f"LP has {nvars} variables > cap {var_cap}")

    # variable layout: x_e first, then per-terminal flows
    fvar = {}
    idx = ne
    for t in terminals:
        for i in rel[t]:
            fvar[(t, i)] = idx
            idx += 1

    c = [e.cost for e in inst.edges] + [Fraction(0)] * (nvars - ne)
    rows, senses, b, kinds = [], [], [], []

    for t in terminals:
        inflow = {}
        outflow = {}
        for i in rel[t]:
            e = inst.edges[i]
            inflow.setdefault(e.head, []).append(fvar[(t, i)])
            outflow.setdefault(e.tail, []).append(fvar[(t, i)])
        vertices = set(inflow) | set(outflow)
        for v in sorted(vertices - {inst.root, t}):
            row = {j: Fraction(1) for j in inflow.get(v, [])}
            for j in outflow.get(v, []):
                row[j] = row.get(j, Fraction(0)) - 1
            rows.append(row)
            senses.append(simplex.EQ)
            b.append(Fraction(0))
            kinds.append(("conservation", inst.labels[t], inst.labels[v]))
        rows.append({j: Fraction(1) for j in inflow.get(t, [])})
        senses.append(simplex.EQ)
        b.append(Fraction(1))
        kinds.append(("demand", inst.labels[t], inst.labels[t]))
        for i in rel[t]:
            rows.append({fvar[(t, i)]: Fraction(1), i: Fraction(-1)})
            senses.append(simplex.LE)
            b.append(Fraction(0))
            kinds.append(("capacity", inst.labels[t], i))

    sol = simplex.solve_lp(c, rows, senses, b)
    if sol.status != simplex.OPTIMAL:
        raise simplex.SimplexError(
            f"flow LP reported {sol.status}; valid instances are always "
            "feasible and bounded")
    certified = sol.check_certificate(c, rows, senses, b)
    x = FractionalSolution(tuple(sol.x[:ne]))
    duals = tuple(zip(kinds, sol.duals))
    return LpResult(sol.value, x, duals, certified)
