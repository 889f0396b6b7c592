"""Values shared across modules."""

from __future__ import annotations


class _Undetermined:
    """The constant ``u`` returned by partial maps outside their domain."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "u"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Undetermined, ())


UNDETERMINED = _Undetermined()


class BoundExceededError(RuntimeError):
    """A search or enumeration would exceed its configured bound."""
