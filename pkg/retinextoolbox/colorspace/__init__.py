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
The :mod:`retinextoolbox.colorspace` module gathers the conversions of
model output to the HSV color space and to the double opponent (DO) color
plane with red-green and yellow-blue axes.
"""
import math
from dataclasses import dataclass

__all__ = ['HsvColor', 'DoColor', 'ColorSample', 'rgb_to_hsv', 'retinex_to_do',
           'sample_color', 'SAMPLE_FIELDS']


@dataclass(frozen=True)
class HsvColor:
    """
    Hue in degrees [0, 360), saturation and value in [0, 255].
    """
    h: float
    s: float
    v: float


@dataclass(frozen=True)
class DoColor:
    """
    Point of the double opponent plane in cartesian and polar form.

    ``o_rg`` is positive towards red, ``o_yb`` positive towards yellow and
    negative towards blue. ``theta`` (degrees) plays the role of hue and
    ``r`` the role of saturation.
    """
    o_rg: float
    o_yb: float
    r: float
    theta: float


def _wrap_degrees(angle):
    if angle < 0:
        angle += 360.
    # -1e-15 + 360 rounds to 360
    if angle >= 360.:
        angle -= 360.
    return angle


def rgb_to_hsv(r, g, b):
    """
    Convert one RGB triple in [0, 255] to HSV.

    On ties the maximum is looked up in the order R, G, B. Saturation is
    scaled to [0, 255].

    Parameters
    ----------
    r, g, b : float.

    Returns
    -------
    color : HsvColor

    Examples
    --------
    >>> rgb_to_hsv(0, 128, 128)
    HsvColor(h=180.0, s=255.0, v=128.0)
    """
    r, g, b = float(r), float(g), float(b)
    v = max(r, g, b)
    delta = v - min(r, g, b)

    if delta == 0:
        h = 0.
    elif v == r:
        h = 60. * (g - b) / delta
    elif v == g:
        h = 120. + 60. * (b - r) / delta
    else:
        h = 240. + 60. * (r - g) / delta

    s = 255. * delta / v if v != 0 else 0.
    return HsvColor(_wrap_degrees(h), s, v)


def retinex_to_do(x_r, x_g, x_b):
    """
    Project a signed model output onto the double opponent plane.

    ``o_rg = x_r - x_g`` and ``o_yb = (x_r + x_g) / 2 - x_b``. The angle is
    taken with the two-argument arctangent. At the origin ``theta`` is 0 and
    must be treated as undefined.

    Parameters
    ----------
    x_r, x_g, x_b : float.

    Returns
    -------
    color : DoColor

    Examples
    --------
    >>> retinex_to_do(200, 100, 50)
    DoColor(o_rg=100.0, o_yb=100.0, r=141.42135623730951, theta=45.0)
    """
    o_rg = float(x_r) - float(x_g)
    o_yb = (float(x_r) + float(x_g)) / 2. - float(x_b)
    r = math.hypot(o_rg, o_yb)
    theta = _wrap_degrees(math.degrees(math.atan2(o_yb, o_rg))) if r > 0 else 0.
    return DoColor(o_rg, o_yb, r, theta)


SAMPLE_FIELDS = ('model', 'condition', 'target', 'h', 's', 'v', 'o_rg', 'o_yb', 'r', 'theta')


@dataclass(frozen=True)
class ColorSample:
    """
    Color of one target under one illumination condition for one model.
    """
    model: str
    condition: int
    target: str
    h: float
    s: float
    v: float
    o_rg: float
    o_yb: float
    r: float
    theta: float

    def as_row(self):
        return [getattr(self, name) for name in SAMPLE_FIELDS]


def sample_color(model, condition, target, display_mean, raw_mean):
    """
    Build a :class:`ColorSample` from the ROI means of a model output.

    Parameters
    ----------
    model : str.
        Model label.
    condition : int.
        Illumination condition index.
    target : str.
        Target label.
    display_mean : tuple of 3 float.
        ROI mean of the display image, converted to HSV.
    raw_mean : tuple of 3 float.
        ROI mean of the raw output X, projected on the DO plane.
    """
    hsv = rgb_to_hsv(*display_mean)
    do = retinex_to_do(*raw_mean)
    return ColorSample(model, int(condition), target,
                       hsv.h, hsv.s, hsv.v, do.o_rg, do.o_yb, do.r, do.theta)
