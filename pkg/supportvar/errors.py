#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import six
from supportvar import constants


def _process_error(policy, condition, description=None, info=None):
    """Build the exception matching an error condition and attach the
    policy's action to it.

    :param policy: The policy deciding the exit code.
    :type policy: ~supportvar.errors.ErrorPolicy
    :param condition: The error condition, either a member of
     ~supportvar.constants.ErrorCodes or its string value.
    :param description: A human readable description.
    :type description: str
    :param info: Structured detail (masks, indices) for the report.
    :type info: dict
    :rtype: ~supportvar.errors.SupportVarietyError
    """
    try:
        code = constants.ErrorCodes(condition)
    except ValueError:
        exception = UnrecognizedError(condition, description, info)
        exception.action = policy.on_unrecognized_error(exception)
    else:
        exception_class = _ERROR_CLASSES.get(code, SupportVarietyError)
        exception = exception_class(description, info=info)
        exception.action = policy.on_error(exception)
    return exception


class ErrorAction(object):

    def __init__(self, exit_code, report=True):
        self.exit_code = constants.ExitCode(exit_code)
        self.report = bool(report)


class ErrorPolicy(object):
    """Maps raised errors onto process exit codes.

    :param on_error: An optional callback receiving the error and returning
     an ErrorAction, consulted for conditions the policy does not recognize.
    :type on_error: callable
    """

    bad_input = constants.INPUT_ERRORS
    over_cap = constants.CAP_ERRORS

    def __init__(self, on_error=None):
        self._on_error = on_error

    def on_unrecognized_error(self, error):
        if self._on_error:
            return self._on_error(error)
        return ErrorAction(constants.ExitCode.VerificationFailure)

    def on_error(self, error):
        if error.condition in self.bad_input:
            return ErrorAction(constants.ExitCode.BadInput)
        if error.condition in self.over_cap:
            return ErrorAction(constants.ExitCode.CapExceeded)
        return ErrorAction(constants.ExitCode.VerificationFailure)

    def exit_code(self, error):
        """Resolve the exit code for any exception raised by the package.

        :rtype: int
        """
        if isinstance(error, SupportVarietyError):
            action = error.action or self.on_error(error)
            return action.exit_code.value
        return self.on_unrecognized_error(error).exit_code.value


class SupportVarietyError(Exception):

    condition = None

    def __init__(self, description=None, info=None):
        self.description = description
        self.info = info or {}
        self.action = None
        message = six.text_type(self.condition.value) if self.condition else "supportvar error"
        if description:
            message += ": {}".format(description)
        super(SupportVarietyError, self).__init__(message)

    def to_json(self):
        return {
            "condition": self.condition.value if self.condition else None,
            "description": self.description,
            "info": self.info}


class UnrecognizedError(SupportVarietyError):

    def __init__(self, condition, description=None, info=None):
        self.raw_condition = condition
        super(UnrecognizedError, self).__init__(
            "{} {}".format(condition, description or "").strip(), info=info)


class InputError(SupportVarietyError):
    pass


class CapExceeded(SupportVarietyError):
    pass


class VerificationError(SupportVarietyError):
    pass


class DivisibleGenerators(InputError):
    condition = constants.ErrorCodes.DivisibleGenerators

    def __init__(self, description=None, info=None, divisor=None, multiple=None):
        info = dict(info or {})
        if divisor is not None:
            info.update(divisor=divisor, multiple=multiple)
            description = description or "generator {} divides generator {}".format(divisor, multiple)
        super(DivisibleGenerators, self).__init__(description, info=info)


class EmptyInput(InputError):
    condition = constants.ErrorCodes.EmptyInput


class NotMinimal(InputError):
    condition = constants.ErrorCodes.NotMinimal

    def __init__(self, description=None, info=None, pair=None):
        info = dict(info or {})
        if pair is not None:
            info['pair'] = list(pair)
            description = description or \
                "no type contains generator {} without generator {}".format(*pair)
        self.pair = tuple(info.get('pair', ())) or None
        super(NotMinimal, self).__init__(description, info=info)


class EmptyType(InputError):
    condition = constants.ErrorCodes.EmptyType


class IndexOutOfRange(InputError):
    condition = constants.ErrorCodes.IndexOutOfRange


class DimensionMismatch(InputError):
    condition = constants.ErrorCodes.DimensionMismatch


class NotPrime(InputError):
    condition = constants.ErrorCodes.NotPrime


class BadParameters(InputError):
    condition = constants.ErrorCodes.BadParameters


class MalformedDocument(InputError):
    condition = constants.ErrorCodes.MalformedDocument


class FaceBudgetExceeded(CapExceeded):
    condition = constants.ErrorCodes.FaceBudgetExceeded


class EdgeBudgetExceeded(CapExceeded):
    condition = constants.ErrorCodes.EdgeBudgetExceeded


class MatrixTooLarge(CapExceeded):
    condition = constants.ErrorCodes.MatrixTooLarge


class CycleCapExceeded(CapExceeded):
    condition = constants.ErrorCodes.CycleCapExceeded


class OverlappingCyclesUnsupported(CapExceeded):
    condition = constants.ErrorCodes.OverlappingCyclesUnsupported


class WrongCardinality(VerificationError):
    condition = constants.ErrorCodes.WrongCardinality


class SharedVertex(VerificationError):
    condition = constants.ErrorCodes.SharedVertex

    def __init__(self, description=None, info=None, mask=None):
        self.mask = mask if mask is not None else (info or {}).get('mask')
        info = dict(info or {}, mask=self.mask)
        super(SharedVertex, self).__init__(description or "vertex used twice", info=info)


class MissingEdge(VerificationError):
    condition = constants.ErrorCodes.MissingEdge

    def __init__(self, description=None, info=None, edge=None):
        self.edge = edge
        info = dict(info or {})
        if edge is not None:
            info['edge'] = edge.to_json()
            description = description or "edge {!r} is not in the Taylor graph".format(edge)
        super(MissingEdge, self).__init__(description, info=info)


class ForbiddenHomotopyIndex(VerificationError):
    condition = constants.ErrorCodes.ForbiddenHomotopyIndex

    def __init__(self, description=None, info=None, index=None):
        self.index = index
        info = dict(info or {}, index=index)
        super(ForbiddenHomotopyIndex, self).__init__(
            description or "homotopy index {} is outside sigma".format(index), info=info)


class UnverifiedMatching(VerificationError):
    condition = constants.ErrorCodes.UnverifiedMatching


class ThetaTouchedByMatching(VerificationError):
    condition = constants.ErrorCodes.ThetaTouchedByMatching

    def __init__(self, description=None, info=None, index=None):
        self.index = index
        info = dict(info or {}, index=index)
        super(ThetaTouchedByMatching, self).__init__(
            description or "matching uses an edge of index {} in theta".format(index), info=info)


class UnsatisfiableOverField(VerificationError):
    condition = constants.ErrorCodes.UnsatisfiableOverField


class NoHandConstruction(VerificationError):
    condition = constants.ErrorCodes.NoHandConstruction


class WitnessRejected(VerificationError):
    condition = constants.ErrorCodes.WitnessRejected


_ERROR_CLASSES = {
    cls.condition: cls for cls in (
        DivisibleGenerators, EmptyInput, NotMinimal, EmptyType, IndexOutOfRange,
        DimensionMismatch, NotPrime, BadParameters, MalformedDocument,
        FaceBudgetExceeded, EdgeBudgetExceeded, MatrixTooLarge, CycleCapExceeded,
        OverlappingCyclesUnsupported, WrongCardinality, SharedVertex, MissingEdge,
        ForbiddenHomotopyIndex, UnverifiedMatching, ThetaTouchedByMatching,
        UnsatisfiableOverField, NoHandConstruction, WitnessRejected)
}


def error_from_json(document, policy=None):
    """Rebuild an error from its to_json document, e.g. one sent back by a
    worker process.

    :rtype: ~supportvar.errors.SupportVarietyError
    """
    return _process_error(
        policy or ErrorPolicy(),
        document.get("condition"),
        description=document.get("description"),
        info=document.get("info"))
