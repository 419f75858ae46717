"""Circuit-to-CNF conversion (Tseitin, full biconditional encoding).

Circuit inputs always receive CNF variables 1..n_inputs in creation order,
whether or not they feed the root cone; downstream code relies on those
stable indices for assumptions and model decoding.  Each AND gate in the
root cone gets one fresh variable and three defining clauses; negation is
free (sign of the literal); the root is asserted with one unit clause.
"""

from __future__ import annotations

from ..circuit import FALSE_LIT, TRUE_LIT, Circuit
from .formula import CnfFormula


def _cone(c: Circuit, root_lit: int) -> bytearray:
    """Mark nodes reachable from the root (children precede parents)."""
    mark = bytearray(c.n_nodes)
    mark[root_lit >> 1] = 1
    first_and = c.n_inputs + 1
    for node in range(c.n_nodes - 1, first_and - 1, -1):
        if mark[node]:
            k = node - first_and
            mark[c.and_a[k] >> 1] = 1
            mark[c.and_b[k] >> 1] = 1
    return mark


def tseitin(c: Circuit) -> tuple[CnfFormula, list[int]]:
    """Encode ``c.root``; returns the CNF and a node -> CNF-variable map.

    The map holds 0 for nodes outside the root cone (and for node 0).
    """
    gate_var = [0] * c.n_nodes
    for i in range(1, c.n_inputs + 1):
        gate_var[i] = i
    f = CnfFormula(num_vars=c.n_inputs)
    if c.root == TRUE_LIT:
        return f, gate_var
    if c.root == FALSE_LIT:
        f.add([])
        return f, gate_var

    mark = _cone(c, c.root)
    first_and = c.n_inputs + 1

    def cnf_lit(lit: int) -> int:
        v = gate_var[lit >> 1]
        return -v if lit & 1 else v

    for node in range(first_and, c.n_nodes):
        if not mark[node]:
            continue
        f.num_vars += 1
        gate_var[node] = f.num_vars
        k = node - first_and
        a = cnf_lit(c.and_a[k])
        b = cnf_lit(c.and_b[k])
        g = f.num_vars
        f.add([-g, a])
        f.add([-g, b])
        f.add([g, -a, -b])
    f.add([cnf_lit(c.root)])
    return f, gate_var


def tseitin_append(
    c: Circuit,
    root_lit: int,
    input_cnf_vars: list[int],
    next_var: int,
) -> tuple[list[list[int]], int, int]:
    """Encode a circuit cone into an existing CNF variable space.

    ``input_cnf_vars[i]`` is the CNF variable standing for input node
    ``i+1``; gate variables are allocated from ``next_var`` upward.
    Returns (defining clauses, CNF literal of the root, next free var).
    The root is NOT asserted; the caller decides its polarity.
    """
    if root_lit == TRUE_LIT or root_lit == FALSE_LIT:
        raise ValueError("constant root: nothing to encode")
    gate_var = [0] * c.n_nodes
    for i in range(1, c.n_inputs + 1):
        gate_var[i] = input_cnf_vars[i - 1]
    mark = _cone(c, root_lit)
    first_and = c.n_inputs + 1
    clauses: list[list[int]] = []

    def cnf_lit(lit: int) -> int:
        v = gate_var[lit >> 1]
        return -v if lit & 1 else v

    for node in range(first_and, c.n_nodes):
        if not mark[node]:
            continue
        gate_var[node] = next_var
        k = node - first_and
        a = cnf_lit(c.and_a[k])
        b = cnf_lit(c.and_b[k])
        clauses.append([-next_var, a])
        clauses.append([-next_var, b])
        clauses.append([next_var, -a, -b])
        next_var += 1
    return clauses, cnf_lit(root_lit), next_var
