"""Single image dehazing by convex transmission estimation on Haar sub-bands."""

from .airlight import estimate_airlight
from .haar import (
    SubbandSet,
    WaveletPyramid,
    dhwt_forward,
    dhwt_forward_multi,
    dhwt_inverse,
    dhwt_inverse_multi,
)
from .hazesim import apply_haze, make_block_constant_t, transmission_from_depth
from .imagecore import CropBox, clamp_unit, crop, normalize_bytes, pad_dyadic
from .metrics import contrast_ms, hautiere, mse, psnr, ssim
from .pipeline import DehazeConfig, DehazeResult, dehaze
from .tvsolver import BoxTvProblem, SolverDiagnostics, lower_bound_plane, solve_swto

__version__ = "0.1.0"
