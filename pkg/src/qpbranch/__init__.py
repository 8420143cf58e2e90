"""Branching solvers for maximum-weight induced subgraph problems on
P_t-free and long-hole-free graphs, with brute-force references."""

from .errors import BudgetExceeded, ContractError, NoSolution, ParseError, QPBranchError, ViolationError
from .graph import Graph, parse_graph, read_graph, write_graph
from .solver import SolverConfig, solve_max_degenerate, solve_mwis

__version__ = "0.1.0"

__all__ = ["Graph", "parse_graph", "read_graph", "write_graph", "SolverConfig", "solve_mwis",
           "solve_max_degenerate", "QPBranchError", "ParseError", "ContractError", "ViolationError",
           "BudgetExceeded", "NoSolution"]
