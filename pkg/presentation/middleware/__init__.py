"""Middleware Module"""

from .error_handler import exit_code_for, run_guarded

__all__ = ["exit_code_for", "run_guarded"]
