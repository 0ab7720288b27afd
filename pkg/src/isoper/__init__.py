"""Word metrics, Dehn functions, weighted resolutions and polynomially bounded
cohomology, computed exactly at desk scale."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    ContractionUnavailable,
    EmptyRelator,
    IdentityViolation,
    IsoperError,
    MissingContraction,
    NotAComplex,
    NotNullhomotopic,
    ParseError,
    UncertifiedSample,
    UnknownName,
    UnknownSymbol,
)
from .words import Alphabet, Letter, Word, parse_word, reduce, word_length  # noqa: E402
from .groups import catalog_model, cayley_ball, kernel_membership, quotient_length  # noqa: E402
from .dehn import (  # noqa: E402
    Presentation,
    SearchBudget,
    area_search,
    catalog_presentation,
    dehn_sample,
    parse_presentation,
    weighted_area_search,
)
from .kernel import BACKEND  # noqa: E402
