import functools
import logging
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2


class ExtremalError(Exception):
    """Base exception for extremal family operations"""

    def to_exit_code(self) -> int:
        return EXIT_USAGE


class ParameterRangeError(ExtremalError):
    """Raised when a parameter is outside the operation's precondition range"""
    def __init__(self, name: str, value, expected: str):
        self.name = name
        self.value = value
        self.expected = expected
        super().__init__(f"Parameter {name}={value} out of range: expected {expected}")


class GroundMismatchError(ExtremalError):
    """Raised when two operands live on different ground sets"""
    def __init__(self, left_n: int, right_n: int):
        self.left_n = left_n
        self.right_n = right_n
        super().__init__(f"Ground mismatch: n={left_n} vs n={right_n}")


class NotIntersectingError(ExtremalError):
    """Raised when a family required to be intersecting has two disjoint members"""
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f"Family is not intersecting: {list(first)} and {list(second)} are disjoint")


class NotCrossIntersectingError(ExtremalError):
    """Raised when a pair required to be cross-intersecting is not"""
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f"Pair is not cross-intersecting: {list(first)} and {list(second)} are disjoint")


class NotStronglyIntersectingError(ExtremalError):
    """Raised when characteristic sets do not strongly intersect"""
    def __init__(self, s_elements, t_elements):
        self.s_elements = s_elements
        self.t_elements = t_elements
        super().__init__(f"Characteristic sets {list(s_elements)} and {list(t_elements)} do not strongly intersect")


class GuardExceededError(ExtremalError):
    """Raised when an exhaustive search would exceed its size guard"""
    def __init__(self, what: str, size: int, guard: int):
        self.what = what
        self.size = size
        self.guard = guard
        super().__init__(f"{what}: size {size} exceeds guard {guard}")


class UnknownTheoremError(ExtremalError):
    """Raised for a theorem id without a registered verifier"""
    def __init__(self, theorem_id: str):
        self.theorem_id = theorem_id
        super().__init__(f"Unknown theorem id '{theorem_id}'")


class UsageError(ExtremalError):
    """Raised for malformed command lines"""
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


def handle_extremal_exception(func):
    """Decorator to convert ExtremalError into a diagnostic and an exit code"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ExtremalError as e:
            logger.debug(f"{func.__name__} failed: {e!r}")
            print(f"error: {e}", file=sys.stderr)
            return e.to_exit_code()
    return wrapper
