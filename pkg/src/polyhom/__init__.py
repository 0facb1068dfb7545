"""Extension properties and closure operators of finite algebras.

Decides, within explicit bounds, whether every homomorphism between
subalgebras of finite powers extends to the whole power, whether the
algebraic and centralizer closure operators coincide, and the related
injectivity properties, with re-checkable witnesses on failure.
"""

from .algebra import (
    DEFAULT_LIMITS,
    FiniteAlgebra,
    Limits,
    OperationTable,
    PartialOperation,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    extend_homomorphism,
    generate_subuniverse,
    hom_defect,
)
from .clone import (
    TermOperation,
    algebraic_closure,
    centralizer_closure,
    centralizer_fragment,
    clone_fragment,
    extend_to_generated,
    relation_fragment,
)
from .decide import (
    Verdict,
    Witness,
    has_sdc_up_to,
    is_cbullet_polhom_up_to,
    is_hom_homogeneous,
    is_injective_hsp,
    is_injective_spfin_up_to,
    is_pol_hom_up_to,
)
from .errors import (
    InputError,
    ParseError,
    PolyhomError,
    ResourceBoundExceeded,
    WellDefinednessError,
)
from .io import builtin, parse_algebra, serialize_algebra
from .monounary import eliminate_quantifier, parse_formula, format_formula
from .pp import qfpp_closure
from .varieties import classify, recognize

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LIMITS",
    "FiniteAlgebra",
    "InputError",
    "Limits",
    "OperationTable",
    "ParseError",
    "PartialOperation",
    "PolyhomError",
    "ResourceBoundExceeded",
    "TermOperation",
    "Verdict",
    "WellDefinednessError",
    "Witness",
    "algebraic_closure",
    "builtin",
    "centralizer_closure",
    "centralizer_fragment",
    "classify",
    "clone_fragment",
    "eliminate_quantifier",
    "enumerate_homomorphisms",
    "enumerate_subuniverses",
    "extend_homomorphism",
    "extend_to_generated",
    "format_formula",
    "generate_subuniverse",
    "has_sdc_up_to",
    "hom_defect",
    "is_cbullet_polhom_up_to",
    "is_hom_homogeneous",
    "is_injective_hsp",
    "is_injective_spfin_up_to",
    "is_pol_hom_up_to",
    "parse_algebra",
    "parse_formula",
    "qfpp_closure",
    "recognize",
    "relation_fragment",
    "serialize_algebra",
    "classify",
]
