"""Exception hierarchy shared across the package.

The CLI maps these onto its documented exit codes; the HTTP layer maps
them onto 400/404 responses.
"""

from __future__ import annotations


class AlignlexError(Exception):
    """Base class for all errors raised by this package."""


class SpanRangeError(AlignlexError):
    """A character span falls outside the document it is applied to."""


class OwnershipError(AlignlexError):
    """A constituent was used with a document or bitext it does not belong to."""


class LevelError(AlignlexError):
    """An operation received a constituent of the wrong level."""


class BeadShapeError(AlignlexError):
    """An alignment bead has an unsupported source/target arity."""


class NotACandidateError(AlignlexError):
    """Association was requested for a word pair that never co-occurs."""


class ConfigError(AlignlexError):
    """A configuration value or query parameter is malformed or out of range."""


class ArchiveError(AlignlexError):
    """Base class for persistence failures."""


class ArchiveVersionError(ArchiveError):
    """The on-disk archive was written with an unsupported format version."""


class ArchiveIntegrityError(ArchiveError):
    """An archive record is malformed or references something that does not exist."""


class ArchiveTruncatedError(ArchiveError):
    """An archive file is missing records announced by the manifest."""
