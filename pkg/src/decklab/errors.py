"""Exception hierarchy. Every error raised by decklab derives from DecklabError."""


class DecklabError(Exception):
    pass


class InvalidTable(DecklabError, ValueError):
    pass


class NotCommutative(InvalidTable):
    def __init__(self, i, j):
        super().__init__(f"table[{i}][{j}] != table[{j}][{i}]")
        self.i, self.j = i, j


class OutOfRange(InvalidTable):
    def __init__(self, i, j, value, order):
        super().__init__(f"table[{i}][{j}] = {value} is not an element of 0..{order - 1}")
        self.i, self.j, self.value = i, j, value


class AxiomViolation(DecklabError, ValueError):
    """A semiring axiom fails; ``witness`` is the offending element tuple."""

    axiom = "axiom"

    def __init__(self, witness):
        super().__init__(f"{self.axiom} fails at {tuple(witness)}")
        self.witness = tuple(witness)


class NotCommutativeMonoid(AxiomViolation):
    axiom = "additive commutative monoid"


class RightIdentityViolation(AxiomViolation):
    axiom = "a*1 = a"


class RightDistributivityViolation(AxiomViolation):
    axiom = "(a+b)*c = a*c + b*c"


class RightAnnihilationViolation(AxiomViolation):
    axiom = "a*0 = 0"


class NotPrime(DecklabError, ValueError):
    pass


class CapExceeded(DecklabError):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class ArityCapExceeded(CapExceeded):
    pass


class OrderMismatch(DecklabError, ValueError):
    pass


class CardinalityTooSmall(DecklabError, ValueError):
    pass


class PreconditionViolated(DecklabError, ValueError):
    pass


class HypothesisUnmet(PreconditionViolated):
    pass


class BadCouple(DecklabError, ValueError):
    pass


class DomainMismatch(DecklabError, ValueError):
    pass


class CarrierMismatch(DecklabError, ValueError):
    pass


class ParseError(DecklabError, ValueError):
    def __init__(self, message, line=1, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line, self.column = line, column


class FalsificationEvent(DecklabError):
    """A proved statement failed on concrete data: signals an implementation bug."""

    def __init__(self, report):
        super().__init__(f"falsification: {report}")
        self.report = report
