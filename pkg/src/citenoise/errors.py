"""Exception types shared across the package."""


class CitenoiseError(Exception):
    """Base class for all citenoise errors."""


class DimensionMismatch(CitenoiseError):
    pass


class NonBinaryEntry(CitenoiseError):
    pass


class UnknownAuthor(CitenoiseError):
    pass


class DuplicateId(CitenoiseError):
    pass


class EmptySystem(CitenoiseError):
    pass


class InvalidConfig(CitenoiseError):
    pass


class InsufficientReplicates(CitenoiseError):
    pass


class NonSymmetric(CitenoiseError):
    pass


class MalformedRow(CitenoiseError):
    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyKey(MalformedRow):
    def __init__(self, line_number):
        super().__init__("empty cited-work key", line_number)


class EmptyReason(MalformedRow):
    def __init__(self, line_number):
        super().__init__("empty knowledge-flow text", line_number)


class ParseError(CitenoiseError):
    pass


class SchemaVersionUnsupported(ParseError):
    pass


class UnknownFixture(CitenoiseError):
    pass
