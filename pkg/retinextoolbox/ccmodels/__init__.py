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
The :mod:`retinextoolbox.ccmodels` module gathers the color constancy
models : center/surround retinex with logarithmic, Naka-Rushton or linear
encoding, and the gray world algorithm.
"""
from dataclasses import dataclass

import numpy as np

from .. import encoding
from ..imagecore import EncodedImage, RetinexOutput
from ..spatialfilter import DEFAULT_SIGMAS, FILTER_PATHS, dog_stages

__all__ = ['ModelSpec', 'MODEL_KINDS', 'default_models', 'run_cs_retinex',
           'gray_world_gains', 'run_gray_world', 'run_model', 'to_display']

MODEL_KINDS = ('log', 'nr', 'linear', 'gray_world', 'pure_log')
_ALIASES = {'gw': 'gray_world', 'n-r': 'nr'}


@dataclass(frozen=True)
class ModelSpec:
    """
    One color constancy model and its parameters.

    Parameters
    ----------
    kind : str
        ``'log'``, ``'nr'``, ``'linear'``, ``'gray_world'`` or the test-only
        ``'pure_log'``.
    gamma : float, optional (default=6.)
        Compression exponent of the logarithmic encoding.
    sigma1, sigma2 : float, optional (default=(1.057, 17.964))
        Center and surround standard deviations in pixels.
    filter_path : str, optional (default='direct')
        ``'direct'`` or ``'hdc'``.
    name : str, optional (default='')
        Replaces the generated label.
    """
    kind: str
    gamma: float = 6.
    sigma1: float = DEFAULT_SIGMAS[0]
    sigma2: float = DEFAULT_SIGMAS[1]
    filter_path: str = 'direct'
    name: str = ''

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError('Unknown model "{}". Available : {}.'.format(
                self.kind, ', '.join(MODEL_KINDS)))
        if not self.sigma1 < self.sigma2:
            raise ValueError('sigma1 ({}) must be lower than sigma2 ({}).'.format(
                self.sigma1, self.sigma2))
        if not np.isfinite(self.gamma):
            raise ValueError('gamma must be finite, got {}.'.format(self.gamma))
        if self.filter_path not in FILTER_PATHS:
            raise ValueError('Unknown filter path "{}".'.format(self.filter_path))

    @property
    def is_retinex(self):
        return self.kind != 'gray_world'

    @property
    def label(self):
        """
        Stable name used in the CSV outputs, e.g. ``log(gamma=6)``.
        """
        if self.name:
            return self.name
        if self.kind == 'log':
            return 'log(gamma={:g})'.format(self.gamma)
        if self.kind == 'gray_world':
            return 'gw'
        return self.kind

    @classmethod
    def from_string(cls, text, **kwargs):
        """
        Parse a model description such as ``log:6``, ``nr``, ``linear`` or ``gw``.

        Parameters
        ----------
        text : str.
        **kwargs :
            Other :class:`ModelSpec` fields (sigma1, sigma2, filter_path).

        Examples
        --------
        >>> ModelSpec.from_string('log:3').label
        'log(gamma=3)'
        """
        name, _, value = text.strip().lower().partition(':')
        kind = _ALIASES.get(name, name)
        if value:
            if kind != 'log':
                raise ValueError('Only the log model takes a parameter, got "{}".'.format(text))
            kwargs['gamma'] = float(value)
        return cls(kind, **kwargs)


def default_models(gammas=(0, 3, 6, 9), **kwargs):
    """
    Log models for each gamma, then linear, Naka-Rushton and gray world.
    """
    models = [ModelSpec('log', gamma=float(g), **kwargs) for g in gammas]
    models += [ModelSpec(kind, **kwargs) for kind in ('linear', 'nr', 'gray_world')]
    return models


def run_cs_retinex(img, spec, return_stages=False):
    """
    Center/surround retinex : per channel encoding then difference of Gaussians.

    Parameters
    ----------
    img : LinearImage.
        Merged radiance map.
    spec : ModelSpec.
        A retinex model (every kind except ``'gray_world'``).
    return_stages : bool, optional (default=False).
        If True, returns a dict with the encoded image ``N``, the filtered
        images ``F1`` and ``F2`` and the output ``X``.

    Returns
    -------
    X : RetinexOutput, or dict if `return_stages` is True.
    """
    if not spec.is_retinex:
        raise ValueError('{} is not a retinex model.'.format(spec.label))
    encoded = encoding.encode(img, spec.kind, gamma=spec.gamma)
    stages = dog_stages(encoded, spec.sigma1, spec.sigma2, spec.filter_path)
    if return_stages:
        stages['N'] = encoded
        return stages
    return stages['X']


def gray_world_gains(img):
    """
    Per channel gains ``128 / mean`` of the gray world algorithm.
    """
    means = img.data.reshape(-1, img.channels).mean(axis=0)
    if np.any(means <= 0):
        raise ValueError('Gray world needs positive channel means, got {}.'.format(means))
    return 128. / means


def run_gray_world(img, clip=True):
    """
    Gray world algorithm : scales each channel so that its mean is 128.

    Parameters
    ----------
    img : LinearImage.
    clip : bool, optional (default=True).
        Clamp the output to [0, 255].

    Returns
    -------
    X : RetinexOutput
        Unsigned output (``signed=False``).
    """
    out = img.data * gray_world_gains(img)
    if clip:
        out = np.clip(out, 0, 255)
    return RetinexOutput(out, signed=False)


def run_model(img, spec):
    """
    Run any model described by `spec` on `img`.
    """
    if spec.kind == 'gray_world':
        return run_gray_world(img)
    return run_cs_retinex(img, spec)


def to_display(X):
    """
    Map a model output to [0, 255] for HSV conversion.

    Signed retinex output is shifted by 128 and clamped, unsigned gray world
    output is kept as is.

    Parameters
    ----------
    X : RetinexOutput.

    Returns
    -------
    display : EncodedImage
    """
    if not X.signed:
        return EncodedImage(np.clip(X.data, 0, 255))
    return EncodedImage(np.clip(X.data + 128., 0, 255))
