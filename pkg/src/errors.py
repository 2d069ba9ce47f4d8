"""
Exception hierarchy shared by the engine and the command line.

Every error carries a stable machine code and the exit code the CLI maps it to:
2 for bad input, 3 for capability limits, 1 for checks that came out false.
"""


class LazyStrataError(Exception):
    """Base class for all engine errors"""
    code = "error"
    exit_code = 1

    def __init__(self, message, code=None, witness=None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.witness = witness

    def to_dict(self):
        """JSON document emitted by the CLI for this error"""
        doc = {"error": self.code, "message": str(self)}
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


# Input errors (exit 2)

class InputError(LazyStrataError):
    code = "input"
    exit_code = 2


class ParseError(InputError):
    code = "syntax"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownVertexError(InputError):
    code = "unknown-vertex"


class UnknownArrowError(InputError):
    code = "unknown-arrow"


class NonComposablePathError(InputError):
    code = "non-composable"


class MixedRelationError(InputError):
    code = "mixed-relation"


class DimensionMismatchError(InputError):
    code = "dimension-mismatch"


class AlgebraMismatchError(InputError):
    code = "algebra-mismatch"


class InvalidModuleError(InputError):
    code = "invalid-module"


class AmbiguousLabelError(InputError):
    code = "ambiguous-label"


class PreconditionError(InputError):
    code = "precondition"


# Capability errors (exit 3)

class CapabilityError(LazyStrataError):
    code = "capability"
    exit_code = 3


class NonTerminationError(CapabilityError):
    code = "non-termination"


class CapExceededError(CapabilityError):
    code = "cap-exceeded"


class NonSplitEndomorphismError(CapabilityError):
    code = "non-split-endomorphism-ring"


# Failed verifications (exit 1)

class VerificationFailure(LazyStrataError):
    code = "failed"
    exit_code = 1


class NotTorsionClassError(VerificationFailure):
    code = "not-torsion-class"


class NotNestedError(VerificationFailure):
    code = "not-nested"


class StratifyingSystemError(VerificationFailure):
    code = "not-stratifying"


class NotFilteredError(VerificationFailure):
    code = "not-filtered"


class NotBasicError(VerificationFailure):
    code = "not-basic"


class NotTauRigidError(VerificationFailure):
    code = "not-tau-rigid"


class HypothesisError(VerificationFailure):
    code = "hypothesis"
