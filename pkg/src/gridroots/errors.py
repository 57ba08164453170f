"""Exception types shared across the package.

The extraction pipeline distinguishes four failure modes, which the CLI
maps onto distinct exit codes: bad input (64), a failed validation (1),
a violated hypothesis with a certificate (2), and a broken internal
invariant (3).
"""
from __future__ import annotations


class MalformedInput(ValueError):
    """Input rejected before any real work started."""

    def __init__(self, message: str, problems: list[str] | None = None):
        super().__init__(message)
        self.problems = list(problems or [])


class HypothesisViolated(Exception):
    """The connectivity hypothesis fails; carries a certificate separation.

    The certificate is a separation of the original host graph of order
    less than k whose A side contains the roots and whose B side contains
    the image of a full pattern row.
    """

    def __init__(self, separation, row: tuple[int, ...], depth: int = 0):
        super().__init__(
            f"blocking separation of order {separation.order} found for row {tuple(row)}"
        )
        self.separation = separation
        self.row = row
        self.depth = depth


class InternalInvariantBroken(AssertionError):
    """A step the extraction argument guarantees did not hold.

    On inputs whose hypotheses were verified beforehand this signals an
    implementation bug; on unverified inputs it may also mean a violated
    precondition that slipped past the cheap checks.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


class BudgetExceeded(RuntimeError):
    """An oracle enumeration was asked to exceed its hard budget."""
