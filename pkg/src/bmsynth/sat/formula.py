"""Clause-level formulas and DIMACS CNF serialization."""

from __future__ import annotations

from dataclasses import dataclass, field


class DimacsError(Exception):
    pass


@dataclass
class CnfFormula:
    """CNF as signed-integer clauses; literal 0 never appears."""

    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)

    def add(self, clause: list[int]) -> None:
        self.clauses.append(clause)

    def check_well_formed(self) -> None:
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range (n={self.num_vars})")

    def satisfied_by(self, model: list[bool]) -> bool:
        """model[i] is the value of variable i+1; total assignments only."""
        for c in self.clauses:
            if not any(model[l - 1] if l > 0 else not model[-l - 1] for l in c):
                return False
        return True


def write_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c) + " 0" if c else "0")
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfFormula:
    num_vars = None
    num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed problem line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer counts in {line!r}")
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}")
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(f"line {lineno}: literal {lit} exceeds declared {num_vars} vars")
                current.append(lit)
    if current:
        raise DimacsError("unterminated final clause (missing 0)")
    if num_vars is None:
        raise DimacsError("missing problem line")
    if len(clauses) != num_clauses:
        raise DimacsError(f"declared {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars=num_vars, clauses=clauses)
