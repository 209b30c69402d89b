"""Exception types raised by the library.

Everything derives from HororealError so callers (the CLI in particular) can
separate bad input from programming errors.
"""


class HororealError(ValueError):
    pass


class DimensionMismatch(HororealError):
    pass


class DegenerateBasis(HororealError):
    pass


class NotStable(HororealError):
    pass


class NotInvolution(HororealError):
    pass


class InvalidType(HororealError):
    pass


class NotSemisimple(HororealError):
    pass


class NotFixed(HororealError):
    pass


class NotCentral(HororealError):
    pass


class UnknownLabel(HororealError):
    pass


class InvalidStructure(HororealError):
    pass


class GroupMismatch(HororealError):
    pass


class OrthogonalityViolated(HororealError):
    def __init__(self, node: int, row: int):
        super().__init__(f"basis row {row} of M pairs nontrivially with coroot of node {node} in I")
        self.node = node
        self.row = row


class NotAColor(HororealError):
    pass


class InvalidFan(HororealError):
    pass


class InvalidDatum(HororealError):
    pass
