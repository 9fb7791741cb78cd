"""Exact local geometry of arrangements with simple normal crossings.

Everything is computed over Q with exact arithmetic: sparse
polynomials, Groebner bases, local Hilbert-Samuel functions,
coordinate-subspace blow-ups and the boundary-preserving
desingularization pipeline built on top of them.
"""

from .poly import (
    ParseError,
    Poly,
    PolyRing,
    format_poly,
    initial_data,
    key_B,
    parse_poly,
)
from .ideals import Ideal, buchberger, reduce_poly
from .hilbert import (
    HSFunction,
    diagram_count,
    diagram_of,
    hs_compare,
    hs_function,
    hs_omega_q,
    hs_value_oracle,
    truncated_gb,
)
from .geometry import (
    Boundary,
    BoundaryComponent,
    Component,
    Divisor,
    DivisorPart,
    Triple,
    Verdict,
    build_components,
    build_divisor,
    iota,
    local_dimension,
    maximal_strata,
    smooth_at,
    stable_snc_pair,
    stable_snc_triple,
    stable_snc_variety,
)
from .blowup import (
    BlowupChart,
    ChartNode,
    center_ideal,
    check_admissible,
    make_charts,
    transform_ideal,
    transform_triple,
)
from .cleaning import (
    MonomialMarkedIdeal,
    clean_monomial_marked,
    cleaning_bound,
    mmi_cosupport,
    mu_exponents,
)
from .obstruction import ObstructionReport, j_cleaning, obstruction_ideal
from .pipeline import (
    RestrictionError,
    RunCertificate,
    desing_stable_snc,
    remove_embedded_divisors,
    verify_run,
)
from .sncfile import SncError, SncFile, parse_snc, print_snc

__version__ = "0.1.0"
