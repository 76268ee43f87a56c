"""flatsic: construction and verification of almost-flat SIC fiducial vectors.

The toolkit builds almost-flat ansatz vectors (including closed-form Legendre
vectors), decides the SIC property through displacement overlaps and quartic
autocorrelation checks, evaluates the X-overlap equation and its companion
identities, generates the exact polynomial systems behind the rescaled
ansatz for external computer-algebra engines, and runs seeded numerical
searches over the free phase angles.
"""

from .ansatz import (
    AnsatzVector,
    DegenerateComponentError,
    IdentityReport,
    ansatz_from_json,
    ansatz_to_json,
    as_normalized,
    build_ansatz,
    displacement_row_identity,
    to_normalized,
    to_rescaled,
    to_vform,
    vform_x_overlap_deviations,
    x_overlap_deviations,
    x_overlap_residual,
    z_overlap_residual,
    z_shift,
)
from .legendre import (
    BranchReport,
    LegendreClassification,
    LegendreVector,
    PerronCounts,
    build_legendre_vector,
    classification_csv_header,
    classification_csv_row,
    classify_legendre,
    legendre_symbol,
    legendre_x1,
    lemma1_closed_form,
    perron_counts,
    primes_3mod4,
)
from .polysys import (
    Poly,
    PolySystem,
    build_system,
    check_d7_component_basis,
    eval_system,
    export_system,
    parse_poly,
    parse_system,
    poly,
    system_manifest,
)
from .search import (
    OBJECTIVES,
    SearchConfig,
    SearchResult,
    canonical_match,
    minimize,
    objective,
    search_results_json,
)
from .vectorio import VectorFileError, dump_vector, parse_vector_file
from .verify import (
    OverlapTable,
    SicReport,
    gik_fourier,
    gik_quartic,
    gik_residual,
    gik_table,
    gik_table_csv,
    is_sic,
    naive_x_residual,
    overlap_table,
    overlap_table_csv,
    sic_residual,
)
from .weyl import (
    FORMS,
    CVec,
    Dim,
    PhaseConstants,
    apply_displacement,
    basis_vector,
    cvec,
    dft,
    inner_product,
    is_prime,
    make_dimension,
    norm_tolerance,
    omega_power,
    phase_constants,
    tau_power,
)

__version__ = "0.1.0"
