class InvalidPosetError(Exception):
    pass


class PopSyntaxError(InvalidPosetError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidPermutationError(Exception):
    pass


class InvalidBoardError(Exception):
    pass


class InvalidTransversalError(InvalidBoardError):
    pass


class RankOverflowError(Exception):
    pass


class BudgetExceededError(Exception):
    pass


class HypothesisError(Exception):
    pass


class EncodingError(Exception):
    pass


class MalformedWordError(EncodingError):
    pass


class PatternContainedError(EncodingError):
    pass


class NotShapeWilfEquivalentError(Exception):
    pass


class ShapeMismatchError(Exception):
    pass


class UnknownFamilyError(Exception):
    pass


class RunNotFoundError(Exception):
    pass


class RunClosedError(Exception):
    pass
