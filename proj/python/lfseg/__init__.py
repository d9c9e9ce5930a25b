"""Level-set active-contour segmentation (RSF/LIF/LGDF/MRSF) with the
direction-consistent min/max fitting-value swap.

Images, level sets and masks are 2-D numpy arrays of shape (height, width).
"""

from lfseg._core import (
    CircleShape,
    ConfigError,
    DivergenceError,
    GaussianKernel,
    InitSpec,
    IoError,
    ModelKind,
    ModelParams,
    MrsfResult,
    ParameterError,
    Polarity,
    RectShape,
    RunResult,
    Scene,
    SyntheticImage,
    SyntheticSpec,
    ThresholdInit,
    VarianceSwapRule,
    convolve,
    default_params,
    dirac_eps,
    dirac_field,
    dsc,
    extract_mask,
    fit_means,
    fit_variances,
    generate,
    heaviside_eps,
    heaviside_field,
    init_binary_step,
    load_image,
    make_gaussian_kernel,
    run,
    run_mrsf,
    save_image,
    save_mask,
    standard_four_region,
    standard_four_region_inits,
    standard_two_blob,
    standard_two_blob_inits,
    standard_vessel,
    swap_lgdf,
    swap_pair,
    validate_params,
)

__all__ = [
    "CircleShape",
    "ConfigError",
    "DivergenceError",
    "GaussianKernel",
    "InitSpec",
    "IoError",
    "ModelKind",
    "ModelParams",
    "MrsfResult",
    "ParameterError",
    "Polarity",
    "RectShape",
    "RunResult",
    "Scene",
    "SyntheticImage",
    "SyntheticSpec",
    "ThresholdInit",
    "VarianceSwapRule",
    "convolve",
    "default_params",
    "dirac_eps",
    "dirac_field",
    "dsc",
    "extract_mask",
    "fit_means",
    "fit_variances",
    "generate",
    "heaviside_eps",
    "heaviside_field",
    "init_binary_step",
    "load_image",
    "make_gaussian_kernel",
    "run",
    "run_mrsf",
    "save_image",
    "save_mask",
    "standard_four_region",
    "standard_four_region_inits",
    "standard_two_blob",
    "standard_two_blob_inits",
    "standard_vessel",
    "swap_lgdf",
    "swap_pair",
    "validate_params",
]

__version__ = "0.1.0"
