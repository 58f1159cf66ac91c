"""
Domain errors.

Every error carries the short code used in structured output (CLI stderr
JSON, HTTP error bodies) and a details dict with the offending values.
"""


class MWLinksError(Exception):
    code = "MWLinksError"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {"error": self.code, "message": self.message, **self.details}


class MalformedBraid(MWLinksError):
    code = "MalformedBraid"


class NotPositive(MWLinksError):
    code = "NotPositive"


class NotAPermutationOfGenerators(MWLinksError):
    code = "NotAPermutationOfGenerators"


class ParityViolation(MWLinksError):
    code = "ParityViolation"


class RangeViolation(MWLinksError):
    code = "RangeViolation"


class InvalidComposition(MWLinksError):
    code = "InvalidComposition"


class ModelMismatch(MWLinksError):
    code = "ModelMismatch"


class LinesIntersect(MWLinksError):
    code = "LinesIntersect"


class NotHopf(MWLinksError):
    code = "NotHopf"


class DegenerateChart(MWLinksError):
    code = "DegenerateChart"


class CollisionFound(MWLinksError):
    code = "CollisionFound"


class DegeneratePlane(MWLinksError):
    code = "DegeneratePlane"


class HypothesisFailed(MWLinksError):
    code = "HypothesisFailed"


class CertificateFailed(MWLinksError):
    code = "CertificateFailed"


class MalformedLines(MWLinksError):
    code = "MalformedLines"
