"""Two-sided quaternion Fourier and Gabor transforms with numerical
checks of their energy identities and uncertainty inequalities."""

from .annihilation import (
    annihilation_constant,
    benedicks_probe,
    dense_operator_norm,
    estimate_operator_norm,
    operator_norm,
    project_mask,
    project_range,
)
from .estimators import GaborQuaternionTransformer, QuaternionFourierTransformer
from .gqft import GaborField4D, gabor_energy, gqft_forward, gqft_inverse
from .grid import (
    GridGeometry,
    Mode,
    QSignal2D,
    QSpectrum2D,
    circular_shift,
    from_rgb_image,
    inner_product,
    lp_norm,
    make_window,
    random_signal,
    to_rgb_image,
)
from .masks import Domain, RegionMask, mask_measure
from .qft import dqft, dqft_direct, dqft_fast, hy_norm, idqft, q_modulus_spectrum
from .quaternion import Quaternion, qabs, qconj, qmul, split_simplex
from .uncertainty import (
    CheckReport,
    check_concentration_lower_bound,
    check_hausdorff_young,
    check_local_uncertainty,
    check_weighted_bound,
    check_young_sup,
    concentration_epsilon,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "Domain",
    "GaborField4D",
    "GaborQuaternionTransformer",
    "GridGeometry",
    "Mode",
    "QSignal2D",
    "QSpectrum2D",
    "Quaternion",
    "QuaternionFourierTransformer",
    "RegionMask",
    "annihilation_constant",
    "benedicks_probe",
    "check_concentration_lower_bound",
    "check_hausdorff_young",
    "check_local_uncertainty",
    "check_weighted_bound",
    "check_young_sup",
    "circular_shift",
    "concentration_epsilon",
    "dense_operator_norm",
    "dqft",
    "dqft_direct",
    "dqft_fast",
    "estimate_operator_norm",
    "from_rgb_image",
    "gabor_energy",
    "gqft_forward",
    "gqft_inverse",
    "hy_norm",
    "idqft",
    "inner_product",
    "lp_norm",
    "make_window",
    "mask_measure",
    "operator_norm",
    "project_mask",
    "project_range",
    "q_modulus_spectrum",
    "qabs",
    "qconj",
    "qmul",
    "random_signal",
    "split_simplex",
    "to_rgb_image",
]
