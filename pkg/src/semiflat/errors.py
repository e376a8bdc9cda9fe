"""Exception types shared across the package."""


class SemiflatError(Exception):
    pass


class AxiomViolation(SemiflatError):
    """A structure failed one of its defining laws.

    ``axiom`` names the law, ``witness`` is the lowest-index tuple breaking it.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class SizeMismatch(SemiflatError):
    pass


class SizeCapExceeded(SemiflatError):
    pass


class BadParams(SemiflatError):
    pass


class IllDefined(SemiflatError):
    def __init__(self, what, witness):
        self.witness = witness
        super().__init__(f"{what}: not well defined at {witness}")


class EndpointMismatch(SemiflatError):
    pass


class ShapeError(SemiflatError):
    pass


class NotSubtractive(SemiflatError):
    pass


class HypothesisFailure(SemiflatError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"hypothesis not satisfied: {which}")


class CertificationFailure(SemiflatError):
    pass


class NotAdditivelyRegular(SemiflatError):
    pass


class NonUnique(SemiflatError):
    def __init__(self, element, witnesses):
        self.element = element
        self.witnesses = tuple(witnesses)
        super().__init__(f"star inverse of {element} not unique: {self.witnesses}")


class InputError(SemiflatError):
    """Problems with user-supplied configuration (exit status 4)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class UnknownReference(InputError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"unknown reference {ident!r}")


class BadCaps(InputError):
    pass
