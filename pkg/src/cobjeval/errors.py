"""Exception hierarchy shared across the package."""


class CobjevalError(Exception):
    """Base class for all package errors."""


class ParagraphNotFound(CobjevalError):
    """The requested paragraph/section name is absent from the COBOL source."""

    def __init__(self, name: str):
        super().__init__(f"paragraph not found: {name}")
        self.name = name


class CobolLexError(CobjevalError):
    """Unrecoverable lexical problem in COBOL source (e.g. unterminated literal)."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TemplateError(CobjevalError):
    """A prompt template still contains unexpanded placeholders."""


class JudgeUnavailable(CobjevalError):
    """The judge backend could not be reached within the retry budget."""


class UnparseableVerdict(CobjevalError):
    """No score could be extracted from a judge response."""


class SchemaError(CobjevalError):
    """An ingested record violates the JSONL schema."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class DuplicateSetError(CobjevalError):
    """The same evaluation-set file (by content digest) was ingested before."""

    def __init__(self, digest: str, existing_set_id: int):
        super().__init__(f"duplicate evaluation set (digest {digest[:12]}), already ingested as set {existing_set_id}")
        self.digest = digest
        self.existing_set_id = existing_set_id


class SetNotFound(CobjevalError):
    """An evaluation-set id does not exist in the store."""

    def __init__(self, set_id: int):
        super().__init__(f"set not found: {set_id}")
        self.set_id = set_id


class ConfigError(CobjevalError):
    """Invalid or unknown configuration keys/values."""
