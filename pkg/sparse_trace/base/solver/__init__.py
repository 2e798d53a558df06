from .torus import SolutionSet, is_bernstein_generic, solve_pencil, solve_torus, start_system, total_degrees

__all__ = ["SolutionSet", "is_bernstein_generic", "solve_pencil", "solve_torus", "start_system", "total_degrees"]
