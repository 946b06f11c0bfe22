"""Landmark registration with compactly supported radial basis functions."""

from ._core import (
    ConditioningError,
    DomainError,
    InputError,
    JacobianField,
    Kernel,
    KernelFamily,
    ParseError,
    SingularConfigurationError,
    SupportBound,
    Transformation,
    asymptotic_axis_det,
    axis_det,
    axis_samples,
    deform_grid_svg,
    det_field,
    figure2_table,
    fit,
    load_landmarks,
    min_support,
    named_families,
    read_pnm,
    rhombus_coefficients,
    support_bound,
    synthetic_brain_image,
    synthetic_brain_landmarks,
    warp_image,
    write_pnm,
)

__all__ = [
    "ConditioningError",
    "DomainError",
    "InputError",
    "JacobianField",
    "Kernel",
    "KernelFamily",
    "ParseError",
    "SingularConfigurationError",
    "SupportBound",
    "Transformation",
    "asymptotic_axis_det",
    "axis_det",
    "axis_samples",
    "deform_grid_svg",
    "det_field",
    "figure2_table",
    "fit",
    "load_landmarks",
    "min_support",
    "named_families",
    "read_pnm",
    "rhombus_coefficients",
    "support_bound",
    "synthetic_brain_image",
    "synthetic_brain_landmarks",
    "warp_image",
    "write_pnm",
]
