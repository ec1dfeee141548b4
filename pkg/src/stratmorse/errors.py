"""Exception hierarchy shared by every module of the package."""


class DSMTError(Exception):
    """Base class for all package errors."""


class MissingFace(DSMTError):
    pass


class DuplicateSimplex(DSMTError):
    pass


class NotAComplex(DSMTError):
    """A simplex set that should be downward closed is not."""


class NonInjectiveVertexField(DSMTError):
    pass


class NotAMatching(DSMTError):
    pass


class NotAMorseFunction(DSMTError):
    def __init__(self, offenders):
        self.offenders = list(offenders)
        super().__init__(f"not a discrete Morse function; offenders: {self.offenders}")


class CyclicField(DSMTError):
    def __init__(self, witness):
        self.witness = list(witness)
        super().__init__(f"vector field has a closed V-path: {self.witness}")


class InvalidStratification(DSMTError):
    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"invalid stratification: {msg}")


class NotADSMF(DSMTError):
    def __init__(self, offenders):
        self.offenders = list(offenders)
        super().__init__(
            f"not a discrete stratified Morse function; offenders: {self.offenders}")


class NonRespectingField(DSMTError):
    pass


class ComplexTooLarge(DSMTError):
    pass


class ParseError(DSMTError):
    pass
