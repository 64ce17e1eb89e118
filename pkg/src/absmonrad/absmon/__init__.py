from .radius import (
    AbsMonCertificate,
    BRadius,
    FiniteCheck,
    Inconclusive,
    PfTailRecord,
    PoleInWindow,
    PoleSet,
    RadiusBracket,
    RatioAboveOne,
    Refutation,
    RootWitness,
    SdirkTailRecord,
    certificate_from_json,
    certify_absmon_at,
    compute_B,
    compute_R,
    derivative_root_bound,
)
from .rk import (
    KMatrix,
    RKMethod,
    check_R_inequality,
    parse_rk_text,
    ssp_coefficient,
    stability_function,
)
