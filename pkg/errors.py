#!/usr/bin/env python3
"""
Exceptions raised by the library. Each carries the CLI exit code it maps to.
"""
import config


class JumpGameError(Exception):
    exit_code = config.EXIT_INVALID_INPUT


class InvalidParameterError(JumpGameError, ValueError):
    """Bad parameters, malformed files, or a violated precondition."""

    exit_code = config.EXIT_INVALID_INPUT


class InapplicableError(JumpGameError, ValueError):
    """The instance lies outside the domain of the requested operation."""

    exit_code = config.EXIT_INAPPLICABLE


class BudgetExceededError(JumpGameError, RuntimeError):
    exit_code = config.EXIT_BUDGET_EXCEEDED

    def __init__(self, count: int, budget: int, what: str = "assignments"):
        self.count = count
        self.budget = budget
        super().__init__(
            f"State space has {count} {what}, over the budget of {budget}.\n"
            "Fix: shrink the instance or raise the budget (--budget / VJG_BUDGET)."
        )


class ConstructionError(JumpGameError, RuntimeError):
    """A constructor produced an assignment that failed post-verification."""

    exit_code = config.EXIT_CONSTRUCTION_ERROR


class GiveUpError(JumpGameError, RuntimeError):
    exit_code = config.EXIT_INVALID_INPUT


class FailedBoundError(JumpGameError, AssertionError):
    exit_code = config.EXIT_FAILED_BOUND
