"""Exception types shared across the package."""


class QuandleError(Exception):
    """Base class for domain failures (CLI exit code 1)."""


class AxiomViolation(QuandleError):
    def __init__(self, axiom: int, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness}")

    def to_json(self):
        return {"error": "AxiomViolation", "axiom": self.axiom, "witness": list(self.witness)}


class BoundExceeded(QuandleError):
    pass


class NotCentralizing(QuandleError):
    def __init__(self, h: int):
        self.h = h
        super().__init__(f"subgroup element {h} does not commute with z")


class NotSubgroup(QuandleError):
    pass


class NotHomomorphism(QuandleError):
    def __init__(self, x: int, y: int):
        self.x, self.y = x, y
        super().__init__(f"map is not a homomorphism at ({x}, {y})")


class WordSyntaxError(QuandleError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownGenerator(QuandleError):
    pass


class UnassignedGenerator(QuandleError):
    pass


class UnknownElement(QuandleError):
    pass


class NotFreePresentation(QuandleError):
    pass


class EmptyBraid(QuandleError):
    pass


class IndexOutOfRange(QuandleError):
    pass


class InconsistentArcs(QuandleError):
    pass
