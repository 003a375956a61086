from .field import GF, FieldElement, NotPrimePowerError, gf, least_irreducible, prime_power
from .library import (
    CATALOG_NAMES,
    AbsenceRow,
    NamedPattern,
    induced_absence_report,
    pattern_library,
    single_edge_deletions_isomorphic,
)
from .plane import (
    IncidenceStructure,
    PlaneAxiomError,
    QuadrangleReport,
    diagonal_points,
    pg2,
    quadrangle_diagonal_test,
)
