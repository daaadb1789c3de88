"""Exception hierarchy. Each class carries the error name used in reports."""


class SchoberError(Exception):
    """Base class for every error raised by the package"""
    code = 'SchoberError'

    def __init__(self, message, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail


# ===== Arithmetic =====

class DimensionMismatchError(SchoberError):
    code = 'DimensionMismatch'


class ShapeMismatchError(SchoberError):
    code = 'ShapeMismatch'


class SingularMatrixError(SchoberError):
    code = 'Singular'


class InconsistentSystemError(SchoberError):
    code = 'Inconsistent'


class BadModulusError(SchoberError):
    code = 'BadModulus'


class ExponentOverflowError(SchoberError):
    code = 'ExponentOverflow'


# ===== Braids and disks =====

class IndexOutOfRangeError(SchoberError):
    code = 'IndexOutOfRange'


class NotDirectSumError(SchoberError):
    code = 'NotDirectSum'


class CrossMapSingularError(SchoberError):
    code = 'CrossMapSingular'


# ===== Local systems =====

class RelationViolatedError(SchoberError):
    code = 'RelationViolated'


class SingularGeneratorError(SchoberError):
    code = 'SingularGenerator'


class NotComposableError(SchoberError):
    code = 'NotComposable'


class MissingFactorizationError(SchoberError):
    code = 'MissingFactorization'


class TruncationBoundaryError(SchoberError):
    code = 'TruncationBoundary'


# ===== Surfaces =====

class BoundaryMismatchError(SchoberError):
    code = 'BoundaryMismatch'


class MonodromyNotTwistError(SchoberError):
    code = 'MonodromyNotTwist'


class BadLoopError(SchoberError):
    code = 'BadLoop'


class HalfMonodromyMismatchError(SchoberError):
    code = 'HalfMonodromyMismatch'


class GlobalRelationFailsError(SchoberError):
    code = 'GlobalRelationFails'


# ===== Instances =====

class NotCalabiYauError(SchoberError):
    code = 'NotCalabiYau'


class UnsupportedError(SchoberError):
    code = 'Unsupported'


# ===== Input =====

class InputFormatError(SchoberError):
    code = 'InputFormat'


ERRORS_BY_CODE = {
    cls.code: cls
    for cls in (
        DimensionMismatchError, ShapeMismatchError, SingularMatrixError,
        InconsistentSystemError, BadModulusError, ExponentOverflowError,
        IndexOutOfRangeError, NotDirectSumError, CrossMapSingularError,
        RelationViolatedError, SingularGeneratorError, NotComposableError,
        MissingFactorizationError, TruncationBoundaryError, BoundaryMismatchError,
        MonodromyNotTwistError, BadLoopError, HalfMonodromyMismatchError,
        GlobalRelationFailsError, NotCalabiYauError, UnsupportedError,
        InputFormatError,
    )
}
