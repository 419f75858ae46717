from .formula import CnfFormula, DimacsError, read_dimacs, write_dimacs
from .tseitin import tseitin, tseitin_append
from .solver import ResourceBudgetExceeded, SatResult, Solver, kernel_name

__all__ = [
    "CnfFormula",
    "DimacsError",
    "read_dimacs",
    "write_dimacs",
    "tseitin",
    "tseitin_append",
    "ResourceBudgetExceeded",
    "SatResult",
    "Solver",
    "kernel_name",
]
