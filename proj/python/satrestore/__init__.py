"""Saturation restoration for single 8-bit exposures."""

from ._satrestore import (
    Crf,
    Error,
    ParseError,
    ShapeError,
    capture,
    color_angle_loss,
    fuse,
    hdr_merge,
    masks,
    mef_ssim,
    mse,
    nonlocal_channel,
    nonlocal_spatial,
    psnr,
    restore,
    run_experiment,
    scene,
    ssim,
    synthesize,
)

__all__ = [
    "Crf",
    "Error",
    "ParseError",
    "ShapeError",
    "capture",
    "color_angle_loss",
    "fuse",
    "hdr_merge",
    "masks",
    "mef_ssim",
    "mse",
    "nonlocal_channel",
    "nonlocal_spatial",
    "psnr",
    "restore",
    "run_experiment",
    "scene",
    "ssim",
    "synthesize",
]
