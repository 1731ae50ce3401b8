"""Exception hierarchy shared by every module of the package."""


class RadoError(Exception):
    """Base class for all domain errors raised by :mod:`rado`."""


class ValidationError(RadoError, ValueError):
    """Malformed simplex, complex or input document."""


class NotASimplexError(RadoError, ValueError):
    """A simplex was required to belong to a complex but does not."""


class SubcomplexError(RadoError, ValueError):
    """A complex was required to be a subcomplex of another one but is not."""


class ApexCollisionError(RadoError, ValueError):
    """The apex of a cone already lies in the base."""


class SizeLimitError(RadoError):
    """A configured enumeration bound was exceeded."""


class LabelTooLargeError(SizeLimitError):
    """A vertex label is too large to be used where its prime is needed."""


class WitnessNotFoundError(RadoError):
    """No vertex of the (finite) ambient complex realises the requested link."""


class WitnessUnavailableError(RadoError, KeyError):
    """A growth record holds no apex for the requested base complex."""


class DObstructionError(RadoError, ValueError):
    """A d-ample query whose base has external simplexes of the forbidden size."""

    def __init__(self, message, obstructions=()):
        super().__init__(message)
        self.obstructions = tuple(obstructions)
