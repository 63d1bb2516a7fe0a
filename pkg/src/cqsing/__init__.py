"""Exact invariants of cyclic quotient surface singularities X(d;1,q).

The package computes the complete class invariant Delta together with
the objects behind it: continued-fraction resolution data, greedy coin
decompositions, Newton polygons of divisor classes and germs, generic
germs and their valuations, Milnor/Newton numbers, delta- and
kappa-invariants, discrepancies, and the module of logarithmically
extendable 2-forms.  Every headline quantity is computed by at least two
independent routes that are asserted equal, in exact rational arithmetic.
"""

from .arith import (
    Decomposition,
    NormalizedSingularity,
    RawType,
    canonical_decomposition,
    decomposition_norms,
    equivalent,
    greedy_decomposition,
    hj_expansion,
    normalize_type,
    q_matrix,
    sum_with_canonical,
)
from .errors import InfiniteQuotientError, InvalidInputError, VerificationError
from .germs import (
    Curvette,
    GenericGerm,
    GermSupport,
    branch_decomposition,
    generic_germ,
    germ_support,
    intersection_multiplicity,
    is_generic,
    valuation_vector,
)
from .invariants import (
    InvariantReport,
    class_report,
    delta_cap,
    delta_curvette_sum,
    delta_generic,
    delta_table,
    kappa_generic,
    mnul_decomposition,
    mu_class,
    newton_number,
    newton_number_data,
    r_blache,
    reconstruct,
)
from .lattice import (
    ClassLattice,
    NewtonPolygon,
    RegionCount,
    hull_of_class,
    hull_of_diagram,
    kappa_pi_count,
    minkowski_sum,
    module_generators,
    quotient_dimension,
    region_count,
)
from .reportio import parse_germ, render_svg, serialize_report, serialize_table
from .resolution import (
    BlowupCharts,
    ResolutionChain,
    blowup_charts,
    discrepancy,
    hj_chain,
    monomial_valuations,
    nu,
)

__version__ = "0.1.0"
