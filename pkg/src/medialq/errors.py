"""Shared exception types."""


class MedialqError(Exception):
    """Base class for all errors raised by this package."""


class OrderTooLargeError(MedialqError):
    """An operation was asked to run beyond its configured size cap."""
