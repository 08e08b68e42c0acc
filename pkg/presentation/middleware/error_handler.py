"""
Exception handling for the command-line runs: maps failures to exit codes
"""
import logging
from typing import Callable

from pydantic import ValidationError

from core.exceptions import NumericalError, SurrogacyError, UserInputError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USER_ERROR = UserInputError.exit_code
EXIT_NUMERICAL = NumericalError.exit_code


def exit_code_for(exc: BaseException) -> int:
    """0 success, 2 user/config error, 3 numerical or sampler failure, 1 anything else"""
    if isinstance(exc, SurrogacyError):
        return exc.exit_code
    if isinstance(exc, ValidationError):
        return EXIT_USER_ERROR
    return EXIT_UNEXPECTED


def _describe(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()
    )


def run_guarded(command: Callable[[], object]) -> int:
    """
    Runs a command and converts exceptions into an exit code

    Args:
        command: zero-argument callable running one CLI command

    Returns:
        int: process exit code
    """
    try:
        command()
        return EXIT_OK
    except UserInputError as exc:
        logger.error(f"Invalid input ({exc.__class__.__name__}): {exc.message}")
        return exit_code_for(exc)
    except NumericalError as exc:
        logger.error(f"Numerical failure ({exc.__class__.__name__}): {exc.message}")
        return exit_code_for(exc)
    except SurrogacyError as exc:
        logger.error(f"Surrogacy error: {exc.message}", exc_info=True)
        return exit_code_for(exc)
    except ValidationError as exc:
        logger.error(f"Invalid configuration: {_describe(exc)}")
        return exit_code_for(exc)
    except Exception as exc:
        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        return exit_code_for(exc)
