"""Exception hierarchy.

Every domain error carries a stable ``code`` used by the command line as its
error identifier.
"""


class PmfoldError(Exception):
    code = "E_DOMAIN"


# complex construction

class EmptyInput(PmfoldError):
    code = "E_EMPTY_INPUT"


class NonUniformDimension(PmfoldError):
    code = "E_NON_UNIFORM_DIMENSION"

    def __init__(self, row):
        super().__init__(f"facet at row {row} has a different dimension")
        self.row = row


class DuplicateVertexInFacet(PmfoldError):
    code = "E_DUPLICATE_VERTEX"

    def __init__(self, row):
        super().__init__(f"facet at row {row} repeats a vertex")
        self.row = row


class FaceNotPresent(PmfoldError):
    code = "E_FACE_NOT_PRESENT"


class WrongDimension(PmfoldError):
    code = "E_WRONG_DIMENSION"


# surface analysis

class NotClosedSurface(PmfoldError):
    code = "E_NOT_CLOSED_SURFACE"

    def __init__(self, reason):
        super().__init__(f"not a closed surface: {reason}")
        self.reason = reason


class NotNormal(PmfoldError):
    code = "E_NOT_NORMAL"


class CycleEdgeMissing(PmfoldError):
    code = "E_CYCLE_EDGE_MISSING"


class PreconditionViolated(PmfoldError):
    code = "E_PRECONDITION"

    def __init__(self, which):
        super().__init__(which)
        self.which = which


class NoWitness(PmfoldError):
    code = "E_NO_WITNESS"


# constructions

class BadDimension(PmfoldError):
    code = "E_BAD_DIMENSION"


class PoleCollision(PmfoldError):
    code = "E_POLE_COLLISION"


class VertexNotPresent(PmfoldError):
    code = "E_VERTEX_NOT_PRESENT"


class FacetMissing(PmfoldError):
    code = "E_FACET_MISSING"


class LabelClash(PmfoldError):
    code = "E_LABEL_CLASH"


class NotAdmissible(PmfoldError):
    code = "E_NOT_ADMISSIBLE"

    def __init__(self, message, path=None):
        super().__init__(message if path is None else f"{message}: path {path}")
        self.path = path


class NotNormalResult(PmfoldError):
    code = "E_NOT_NORMAL_RESULT"


# decomposition

class NotMissing(PmfoldError):
    code = "E_NOT_MISSING"


class MalformedCut(PmfoldError):
    """Internal consistency failure while cutting; indicates a bug."""

    code = "E_MALFORMED_CUT"


class NotG2Minimal(PmfoldError):
    code = "E_NOT_G2_MINIMAL"


class UnsupportedProfile(PmfoldError):
    code = "E_UNSUPPORTED_PROFILE"


class TheoremViolation(PmfoldError):
    """An object guaranteed by the structure theory is absent or forbidden.

    Raised when, e.g., a handle is detected on a certified g2-minimal input.
    The input contradicts the hypotheses; nothing is guessed.
    """

    code = "E_THEOREM_VIOLATION"


class ReplayMismatch(PmfoldError):
    code = "E_REPLAY_MISMATCH"


# io

class ParseError(PmfoldError):
    code = "E_PARSE"

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
