class GainRankException(Exception):
    pass


class QuaternionDivisionException(GainRankException, ZeroDivisionError):
    pass


class NonUnitGainException(GainRankException, ValueError):
    pass


class AdjointParityException(GainRankException):
    """
    complex rank of an adjoint came out odd. only possible with a bad float tolerance
    """
    pass


class GraphFormatException(GainRankException, ValueError):
    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class VertexRangeException(GainRankException, IndexError):
    pass


class NotACycleException(GainRankException, ValueError):
    pass


class DisconnectedGraphException(GainRankException):
    pass


class AcyclicGraphException(GainRankException):
    pass


class AmbiguousCycleTypeException(GainRankException):
    pass


class ParityMismatchException(GainRankException, ValueError):
    pass


class WrongFamilyException(GainRankException):
    pass


class PendantTwinsException(GainRankException):
    pass


class FalsificationException(GainRankException):
    """
    a rank statement disagreed with the computed rank.
    carries the offending graph so callers can persist a witness
    """

    def __init__(self, check: str, detail: str, graph=None):
        self.check = check
        self.detail = detail
        self.graph = graph
        super().__init__(f'{check}: {detail}')
