#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# =============================================================================
#  ____      _   _                 _____           _ ____
# |  _ \ ___| |_(_)_ __   _____  _|_   _|__   ___ | | __ )  _____  __
# | |_) / _ \ __| | '_ \ / _ \ \/ / | |/ _ \ / _ \| |  _ \ / _ \ \/ /
# |  _ <  __/ |_| | | | |  __/>  <  | | (_) | (_) | | |_) | (_) >  <
# |_| \_\___|\__|_|_| |_|\___/_/\_\ |_|\___/ \___/|_|____/ \___/_/\_\
#
# Retina-inspired color constancy toolbox.
# =============================================================================
"""
The :mod:`retinextoolbox.spatialfilter` module gathers Gaussian filtering,
direct and through a pyramid of small kernels, and the difference of
Gaussians used by the center/surround models.

Borders are handled by replicating the edge pixels.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d, map_coordinates

from ..imagecore import RetinexOutput, image_like

__all__ = ['GaussianSpec', 'gaussian_filter', 'hdc_gaussian', 'pyramid_levels',
           'dog', 'dog_stages', 'FILTER_PATHS', 'DEFAULT_SIGMAS']

FILTER_PATHS = ('direct', 'hdc')
DEFAULT_SIGMAS = (1.057, 17.964)

# 5-tap binomial kernel, variance 1
_REDUCE_KERNEL = np.array([1., 4., 6., 4., 1.]) / 16.


@dataclass(frozen=True)
class GaussianSpec:
    """
    Sampled Gaussian kernel.

    Parameters
    ----------
    sigma : float
        Standard deviation in pixels.
    radius : int or None, optional (default=None)
        Half-width of the kernel. Defaults to ``ceil(3 * sigma)``.
    """
    sigma: float
    radius: int = None

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError('sigma must be positive, got {}.'.format(self.sigma))
        min_radius = int(math.ceil(3 * self.sigma))
        if self.radius is None:
            object.__setattr__(self, 'radius', min_radius)
        elif self.radius < min_radius:
            raise ValueError('radius must be at least ceil(3 * sigma) = {}, got {}.'.format(
                min_radius, self.radius))

    def kernel(self):
        """
        Normalized 1-D weights of length ``2 * radius + 1``.
        """
        x = np.arange(-self.radius, self.radius + 1, dtype=np.float64)
        weights = np.exp(-0.5 * (x / self.sigma) ** 2)
        return weights / weights.sum()


def _as_spec(spec):
    return spec if isinstance(spec, GaussianSpec) else GaussianSpec(float(spec))


def _separable(data, weights):
    out = correlate1d(data, weights, axis=0, mode='nearest')
    return correlate1d(out, weights, axis=1, mode='nearest')


def gaussian_filter(img, spec):
    """
    Separable Gaussian filter with replicated borders.

    Parameters
    ----------
    img : EncodedImage (or any image container).
    spec : GaussianSpec or float.
        The kernel, or its standard deviation.

    Returns
    -------
    filtered : same container type as `img`
    """
    spec = _as_spec(spec)
    return image_like(img, _separable(img.data, spec.kernel()))


def pyramid_levels(sigma):
    """
    Number of reduce steps used by :func:`hdc_gaussian` for `sigma`.

    The deepest level L is the largest one with ``2 ** L <= sigma / 2`` so
    that the residual filter still spans a few samples of that level.
    """
    if sigma < 2:
        return 0
    return int(math.floor(math.log2(sigma / 2.)))


def _hdc(data, sigma, levels):
    scale = 2 ** levels
    pad = int(math.ceil(3 * sigma)) + 2 * scale
    height, width = data.shape[:2]
    # replicated margin keeps the border semantics of the direct filter
    level = np.pad(data, ((pad, pad), (pad, pad), (0, 0)), mode='edge')

    for _ in range(levels):
        level = _separable(level, _REDUCE_KERNEL)[::2, ::2]

    # each reduce step k adds a variance of 4 ** k original pixels
    residual_var = (sigma ** 2 - (4 ** levels - 1) / 3.) / 4 ** levels
    level = _separable(level, GaussianSpec(math.sqrt(residual_var)).kernel())

    rows = (np.arange(height, dtype=np.float64) + pad) / scale
    cols = (np.arange(width, dtype=np.float64) + pad) / scale
    grid = np.meshgrid(rows, cols, indexing='ij')
    out = np.empty(data.shape)
    for c in range(data.shape[2]):
        out[..., c] = map_coordinates(level[..., c], grid, order=1, mode='nearest')
    return out


def hdc_gaussian(img, target_sigma):
    """
    Fast Gaussian filter by hierarchical discrete correlation.

    The image is reduced several times with a 5-tap binomial kernel, the
    remaining blur is applied at the coarsest level with a small Gaussian,
    and the result is expanded back by bilinear interpolation. Images
    smaller than four samples of the deepest level fall back to
    :func:`gaussian_filter`.

    Decimation starts at the first padded sample, so the grid is not
    centred on the image and mirror symmetry only holds within the
    fidelity of the approximation. Use the direct filter when exact
    symmetry matters.

    Parameters
    ----------
    img : EncodedImage (or any image container).
    target_sigma : float.
        Standard deviation to approximate, at least 1.

    Returns
    -------
    filtered : same container type as `img`
    """
    if not target_sigma >= 1:
        raise ValueError('target_sigma must be at least 1, got {}.'.format(target_sigma))
    levels = pyramid_levels(target_sigma)
    if levels == 0 or min(img.height, img.width) < 4 * 2 ** levels:
        return gaussian_filter(img, target_sigma)
    return image_like(img, _hdc(img.data, float(target_sigma), levels))


def _filter(img, sigma, filter_path):
    if filter_path == 'direct':
        return gaussian_filter(img, sigma)
    if filter_path == 'hdc':
        return hdc_gaussian(img, sigma)
    raise ValueError('Unknown filter path "{}". Available : {}.'.format(
        filter_path, ', '.join(FILTER_PATHS)))


def dog_stages(img, sigma1=DEFAULT_SIGMAS[0], sigma2=DEFAULT_SIGMAS[1], filter_path='direct'):
    """
    Difference of Gaussians returning its intermediate images.

    Returns
    -------
    stages : dict
        ``F1`` and ``F2`` the center and surround filtered images, ``X``
        their difference as a :class:`RetinexOutput`.
    """
    if not sigma1 < sigma2:
        raise ValueError('sigma1 ({}) must be lower than sigma2 ({}).'.format(sigma1, sigma2))
    center = _filter(img, sigma1, filter_path)
    surround = _filter(img, sigma2, filter_path)
    return dict(F1=center, F2=surround, X=RetinexOutput(center.data - surround.data))


def dog(img, sigma1=DEFAULT_SIGMAS[0], sigma2=DEFAULT_SIGMAS[1], filter_path='direct'):
    """
    Difference of Gaussians ``g(sigma1) * img - g(sigma2) * img``.

    Parameters
    ----------
    img : EncodedImage.
    sigma1 : float, optional (default=1.057).
        Center standard deviation.
    sigma2 : float, optional (default=17.964).
        Surround standard deviation, larger than `sigma1`.
    filter_path : str, optional (default='direct').
        ``'direct'`` or ``'hdc'`` for the pyramid approximation.

    Returns
    -------
    X : RetinexOutput
    """
    return dog_stages(img, sigma1, sigma2, filter_path)['X']
