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
The :mod:`retinextoolbox.encoding` module gathers the light intensity
encoding functions applied per channel before the center/surround filter :
logarithmic, Naka-Rushton and linear, plus the histogram rule choosing the
range of radiance to encode.

Every encoder maps ``[i_min, i_max]`` onto ``[0, 255]`` and clamps outside
values. Encoded values stay real numbers; quantization only happens when an
image is written to disk.
"""
from dataclasses import dataclass

import numpy as np

from ..imagecore import EncodedImage, LinearImage

__all__ = ['IntensityBounds', 'LogParams', 'NrParams', 'DegenerateBoundsError',
           'compute_bounds', 'channel_bounds', 'log_encode', 'nr_encode',
           'linear_encode', 'pure_log_encode', 'encode', 'transfer_curves', 'ENCODERS']

ENCODERS = ('log', 'nr', 'linear', 'pure_log')


class DegenerateBoundsError(ValueError):
    """i_min is not strictly below i_max, nothing can be encoded."""


@dataclass(frozen=True)
class IntensityBounds:
    """
    Range of radiance mapped onto [0, 255].

    Parameters
    ----------
    i_min : float
        Radiance encoded as 0.
    i_max : float
        Radiance encoded as 255.
    """
    i_min: float
    i_max: float

    def __post_init__(self):
        if not (np.isfinite(self.i_min) and np.isfinite(self.i_max)):
            raise DegenerateBoundsError('Bounds must be finite.')
        if self.i_min < 0:
            raise DegenerateBoundsError('i_min must be nonnegative, got {}.'.format(self.i_min))
        if self.i_min >= self.i_max:
            raise DegenerateBoundsError(
                'i_min ({}) must be lower than i_max ({}).'.format(self.i_min, self.i_max))

    @property
    def span(self):
        return self.i_max - self.i_min


@dataclass(frozen=True)
class LogParams:
    """
    Parameters of the logarithmic encoding ``L = beta * (log2(I - alpha) - gamma)``.
    """
    gamma: float
    alpha: float
    beta: float

    @classmethod
    def from_bounds(cls, bounds, gamma):
        """
        Choose alpha and beta so that i_min maps to 0 and i_max to 255.

        Parameters
        ----------
        bounds : IntensityBounds.
        gamma : float.
            Compression exponent. Small values give more levels to dark
            radiance, large values make the curve close to linear.
        """
        if not np.isfinite(gamma):
            raise ValueError('gamma must be finite, got {}.'.format(gamma))
        alpha = bounds.i_min - 2.0 ** gamma
        beta = 255.0 / (np.log2(bounds.i_max - alpha) - gamma)
        return cls(float(gamma), float(alpha), float(beta))


@dataclass(frozen=True)
class NrParams:
    """
    Parameters of the Naka-Rushton encoding with exponent n = 1.
    """
    i_h: float
    v_m: float
    n: int = 1

    @classmethod
    def from_bounds(cls, bounds, i_h):
        """
        Choose v_m so that i_max maps to 255.

        Parameters
        ----------
        bounds : IntensityBounds.
        i_h : float.
            Semi-saturation radiance, must be positive.
        """
        if not i_h > 0:
            raise ValueError('Semi-saturation i_h must be positive, got {}.'.format(i_h))
        v_m = 255.0 * (bounds.span + i_h) / bounds.span
        return cls(float(i_h), float(v_m))


def compute_bounds(channel, n_t=None):
    """
    Radiance bounds of one channel from its cumulative histogram.

    i_min is the smallest value v such that more than ``n_t / 256`` pixels
    are lower or equal to v, i_max the smallest v such that more than
    ``n_t - n_t / 256`` pixels are. For real valued data these are the order
    statistics of rank ``floor(n_t / 256) + 1`` and
    ``floor(n_t - n_t / 256) + 1``.

    Parameters
    ----------
    channel : array-like.
        Radiance of every pixel of the channel.
    n_t : int or None, optional (default=None).
        Number of pixels. Computed from `channel` if None.

    Returns
    -------
    bounds : IntensityBounds

    Examples
    --------
    >>> values = np.full(19200, 100.)
    >>> values[:76] = 10
    >>> compute_bounds(values).i_min
    10.0
    """
    values = np.asarray(channel, dtype=np.float64).ravel()
    if n_t is None:
        n_t = values.size
    elif n_t != values.size:
        raise ValueError('n_t ({}) does not match the number of pixels ({}).'.format(
            n_t, values.size))
    if n_t == 0:
        raise ValueError('Cannot compute bounds of an empty channel.')

    low_rank = int(np.floor(n_t / 256.))
    high_rank = min(int(np.floor(n_t - n_t / 256.)), n_t - 1)
    ordered = np.partition(values, (low_rank, high_rank))
    i_min, i_max = float(ordered[low_rank]), float(ordered[high_rank])
    if i_min == i_max:
        raise DegenerateBoundsError(
            'Degenerate bounds : i_min = i_max = {}.'.format(i_min))
    return IntensityBounds(i_min, i_max)


def channel_bounds(img):
    """
    One :class:`IntensityBounds` per channel of `img`.
    """
    return [compute_bounds(img.data[..., c]) for c in range(img.channels)]


def _per_channel(img, bounds):
    if bounds is None:
        return channel_bounds(img)
    if isinstance(bounds, IntensityBounds):
        return [bounds] * img.channels
    bounds = list(bounds)
    if len(bounds) != img.channels:
        raise ValueError('Expected {} bounds, got {}.'.format(img.channels, len(bounds)))
    return bounds


def _clamped(channel, bounds):
    return np.clip(channel, bounds.i_min, bounds.i_max)


def log_encode(img, gamma, bounds=None):
    """
    Logarithmic encoding of a radiance map.

    Parameters
    ----------
    img : LinearImage.
    gamma : float.
        Compression exponent.
    bounds : None, IntensityBounds or list of IntensityBounds, optional (default=None).
        If None, bounds are computed per channel with :func:`compute_bounds`.

    Returns
    -------
    encoded : EncodedImage

    Examples
    --------
    >>> img = LinearImage(np.full((1, 1, 3), 1000.))
    >>> log_encode(img, 6, IntensityBounds(100, 3300)).data[0, 0, 0]
    175.9...
    """
    bounds = _per_channel(img, bounds)
    out = np.empty(img.shape)
    for c, b in enumerate(bounds):
        params = LogParams.from_bounds(b, gamma)
        channel = _clamped(img.data[..., c], b)
        out[..., c] = params.beta * (np.log2(channel - params.alpha) - params.gamma)
    return EncodedImage(np.clip(out, 0, 255))


def nr_encode(img, bounds=None, i_h=None):
    """
    Naka-Rushton encoding (exponent 1) of a radiance map.

    Radiance below i_min gives 0, above i_max gives 255, in between
    ``v_m * (I - i_min) / ((I - i_min) + i_h)``.

    Parameters
    ----------
    img : LinearImage.
    bounds : None, IntensityBounds or list of IntensityBounds, optional (default=None).
    i_h : None, float or list of float, optional (default=None).
        Semi-saturation radiance per channel. If None, the median of all
        pixels of the channel.

    Returns
    -------
    encoded : EncodedImage
    """
    bounds = _per_channel(img, bounds)
    if i_h is None:
        i_h = [float(np.median(img.data[..., c])) for c in range(img.channels)]
    elif np.isscalar(i_h):
        i_h = [float(i_h)] * img.channels

    out = np.empty(img.shape)
    for c, b in enumerate(bounds):
        params = NrParams.from_bounds(b, i_h[c])
        u = _clamped(img.data[..., c], b) - b.i_min
        out[..., c] = params.v_m * u / (u + params.i_h)
    return EncodedImage(np.clip(out, 0, 255))


def linear_encode(img, bounds=None):
    """
    Affine map of ``[i_min, i_max]`` onto ``[0, 255]``, clamped.

    Parameters
    ----------
    img : LinearImage.
    bounds : None, IntensityBounds or list of IntensityBounds, optional (default=None).

    Returns
    -------
    encoded : EncodedImage
    """
    bounds = _per_channel(img, bounds)
    out = np.empty(img.shape)
    for c, b in enumerate(bounds):
        out[..., c] = 255.0 * (_clamped(img.data[..., c], b) - b.i_min) / b.span
    return EncodedImage(np.clip(out, 0, 255))


def pure_log_encode(img, scale=32., eps=1e-9):
    """
    Idealised encoder ``L = scale * log2(I + eps)`` with no adaptive bounds.

    A multiplicative gain on a channel becomes an additive constant, which
    the difference of Gaussians removes exactly. Output is not restricted
    to [0, 255].
    """
    return EncodedImage(scale * np.log2(img.data + eps), check_range=False)


def encode(img, kind, gamma=6.):
    """
    Encode `img` with the encoder named `kind`.

    Parameters
    ----------
    img : LinearImage.
    kind : str.
        One of ``'log'``, ``'nr'``, ``'linear'``, ``'pure_log'``.
    gamma : float, optional (default=6.).
        Only used by the logarithmic encoder.
    """
    if not isinstance(img, LinearImage):
        raise TypeError('Encoders expect a LinearImage, got {}.'.format(type(img).__name__))
    if kind == 'log':
        return log_encode(img, gamma)
    if kind == 'nr':
        return nr_encode(img)
    if kind == 'linear':
        return linear_encode(img)
    if kind == 'pure_log':
        return pure_log_encode(img)
    raise ValueError('Unknown encoder "{}". Available : {}.'.format(kind, ', '.join(ENCODERS)))


def transfer_curves(bounds, gammas=(0., 3., 6., 9.), i_h=None, n_points=256):
    """
    Input/output curves of the log encoder over `gammas`, Naka-Rushton and linear.

    Parameters
    ----------
    bounds : IntensityBounds.
    gammas : sequence of float, optional (default=(0, 3, 6, 9)).
    i_h : None or float, optional (default=None).
        Semi-saturation of the Naka-Rushton curve. If None, the median of
        the sampled radiance, as :func:`nr_encode` does on an image.
    n_points : int, optional (default=256).
        Radiance samples, evenly spaced over ``[i_min, i_max]``.

    Returns
    -------
    rows : list of tuple
        ``(encoder, gamma, I, value)``, gamma is None except for log rows.

    Examples
    --------
    >>> rows = transfer_curves(IntensityBounds(0, 1000), gammas=(6,), n_points=3)
    >>> [(encoder, I) for encoder, gamma, I, value in rows]
    [('log', 0.0), ('log', 500.0), ('log', 1000.0), ('nr', 0.0), ('nr', 500.0), ('nr', 1000.0), ('linear', 0.0), ('linear', 500.0), ('linear', 1000.0)]
    """
    if n_points < 2:
        raise ValueError('At least 2 points are needed, got {}.'.format(n_points))
    radiance = np.linspace(bounds.i_min, bounds.i_max, n_points)
    ramp = LinearImage(np.repeat(radiance[None, :, None], 3, axis=2))

    curves = [('log', float(gamma), log_encode(ramp, gamma, bounds)) for gamma in gammas]
    curves.append(('nr', None, nr_encode(ramp, bounds, i_h)))
    curves.append(('linear', None, linear_encode(ramp, bounds)))
    return [(encoder, gamma, float(I), float(value))
            for encoder, gamma, encoded in curves
            for I, value in zip(radiance, encoded.data[0, :, 0])]
