"""Shared exception types."""


class ResourceLimitError(Exception):
    """An operation would exceed its configured work or memory budget."""
