"""
Exception hierarchy shared by every toolkit module
"""
from typing import Optional


class QNAError(Exception):
    """Base class for all toolkit errors"""


class InvalidArgumentError(QNAError, ValueError):
    """An operation was called with arguments outside its contract"""


class EmptyDocumentError(InvalidArgumentError):
    """A document has no tokens where at least one is required"""

    def __init__(self, doc_id: str, message: Optional[str] = None):
        self.doc_id = doc_id
        super().__init__(message or f"Document '{doc_id}' has no tokens")


class MissingInputError(QNAError, FileNotFoundError):
    """A required file or directory does not exist"""


class DecodeFailure(QNAError):
    """Raw bytes could not be decoded with any configured encoding"""

    def __init__(self, path: str, offset: int, encodings):
        self.path = path
        self.offset = offset
        super().__init__(
            f"Cannot decode {path} at byte offset {offset} "
            f"(tried {', '.join(encodings)})"
        )


class WordNetParseError(QNAError):
    """A WordNet database line could not be parsed"""

    def __init__(self, path: str, offset: int, reason: str):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}, byte offset {offset}: {reason}")


class NoScorableWordsError(QNAError):
    """Affect scoring found no word with a WordNet synset"""


class InsufficientTextError(QNAError):
    """A text is too short for the requested segmentation"""


class FigureError(InvalidArgumentError):
    """Figure data is empty or has the wrong shape"""


class ExportError(QNAError):
    """Result tables could not be written"""
