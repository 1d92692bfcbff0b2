"""coorbit2d: 2D dilation groups, coorbit-equivalence classification, and
numerical continuous wavelet analysis over sampled group charts."""

__version__ = "0.1.0"

from .classify import (
    CanonicalForm,
    EquivalenceVerdict,
    LineSet,
    canonical_diagonal,
    canonical_shearlet,
    canonical_similitude,
    canonicalize,
    component_count,
    coorbit_equivalent,
    in_coorbit_symmetry,
    in_normalizer,
    in_orbit_symmetry,
    lines_to_phi_s,
    orbit_complement,
    orbit_contains,
    rep_group,
)
from .errors import (
    ChartMismatchError,
    CoorbitError,
    CoverageWarning,
    DegenerateInputError,
    FormatError,
    NotInGroupError,
    OrbitSampleError,
    SingularMatrixError,
    WaveletSupportError,
)
from .groups import (
    DiagonalChart,
    Family,
    GroupSpec,
    ShearletChart,
    SimilitudeChart,
    chart_from_element,
    conjugate_spec,
    contains,
    diagonal,
    dual_action,
    element_from_chart,
    g_weight,
    group_inverse,
    group_product,
    haar_weight,
    lie_algebra_basis,
    rotation,
    same_group,
    shear,
    shearlet,
    similitude,
)
from .io_formats import (
    emit_report,
    group_spec_from_dict,
    group_spec_to_dict,
    make_report,
    parse_group_spec,
    parse_report,
    read_signal,
    write_group_spec,
    write_signal,
)
from .sampling import (
    GroupSampling,
    build_sampling,
    default_sampling,
    diagonal_sampling,
    shearlet_sampling,
    similitude_sampling,
)
from .signals import (
    GridSignal,
    TestSignal,
    freq_bump,
    freq_grids,
    gen_test_signal,
    psi_atom,
    signal_from_spectrum,
    spectral_norm_l2,
    spectrum_from_signal,
    wave_packet,
)
from .transform import (
    CalderonResult,
    CoeffSlab,
    RatioTable,
    analyze,
    calderon_constant,
    coorbit_norm,
    covariance_residual,
    default_orbit_samples,
    invert,
    norm_ratio_profile,
)
from .wavelets import WaveletSpec, bump, default_wavelet
