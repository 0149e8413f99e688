"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (e.g. ``"codim-too-small"``)
which the command line echoes and tests match against.
"""


class DdbarError(Exception):
    """Base class; ``code`` names the failed precondition."""

    code = "error"

    def __init__(self, code=None, detail=""):
        if code is not None:
            self.code = code
        self.detail = detail
        super().__init__(f"{self.code}: {detail}" if detail else self.code)


class ShapeError(DdbarError):
    code = "shape-error"


class ParseError(DdbarError):
    code = "parse-error"


class ModelError(DdbarError):
    """A model fails the checks required by a strict operation."""

    code = "non-realizable"


class ConstructionError(DdbarError):
    code = "construction-error"


class BicomplexError(DdbarError):
    code = "invalid-bicomplex"
