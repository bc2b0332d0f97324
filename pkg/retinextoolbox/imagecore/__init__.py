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
The :mod:`retinextoolbox.imagecore` module gathers the image containers,
region-of-interest helpers and the binary PPM/PFM codec shared by every
other module.

Images are stored as ``(height, width, 3)`` float64 arrays in R,G,B order
and are read-only once built.
"""
from dataclasses import dataclass

import numpy as np

__all__ = ['LinearImage', 'EncodedImage', 'RetinexOutput', 'Roi',
           'ImageFormatError', 'TruncatedImageError', 'RoiError',
           'read_image', 'write_image', 'roi_mean', 'image_like']


class ImageFormatError(ValueError):
    """Malformed image file. ``offset`` is the byte where decoding failed."""

    def __init__(self, msg, offset=0):
        super().__init__('{} (byte offset {})'.format(msg, offset))
        self.offset = offset


class TruncatedImageError(ImageFormatError):
    """The payload size does not match the dimensions declared in the header."""


class RoiError(ValueError):
    """A region of interest does not fit inside the image."""


class _Image:
    """
    Base container. Subclasses only add value-range checks.

    Parameters
    ----------
    data : array-like, shape = [height, width, 3]
        Pixel values in R,G,B order.
    """

    def __init__(self, data):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(
                'Image data must have shape (height, width, 3), got {}.'.format(arr.shape))
        if arr.shape[0] * arr.shape[1] == 0:
            raise ValueError('Image must contain at least one pixel.')
        if not np.all(np.isfinite(arr)):
            raise ValueError('Image data must be finite.')
        self._check_range(arr)
        arr.setflags(write=False)
        self._data = arr

    def _check_range(self, arr):
        pass

    @property
    def data(self):
        return self._data

    @property
    def height(self):
        return self._data.shape[0]

    @property
    def width(self):
        return self._data.shape[1]

    @property
    def channels(self):
        return self._data.shape[2]

    @property
    def shape(self):
        return self._data.shape

    def __repr__(self):
        return '{}(width={}, height={})'.format(
            type(self).__name__, self.width, self.height)


class LinearImage(_Image):
    """
    Nonnegative radiance map, the merged HDR signal handed to the models.
    """

    def _check_range(self, arr):
        if np.any(arr < 0):
            raise ValueError('Radiance values must be nonnegative.')


class EncodedImage(_Image):
    """
    Encoded intensities in [0, 255].

    Parameters
    ----------
    data : array-like, shape = [height, width, 3]
    check_range : bool, optional (default=True).
        If False, values outside [0, 255] are accepted. Only the idealised
        pure-log encoder uses it.
    """

    def __init__(self, data, check_range=True):
        self.check_range = check_range
        super().__init__(data)

    def _check_range(self, arr):
        if self.check_range and (np.any(arr < 0) or np.any(arr > 255)):
            raise ValueError('Encoded values must lie in [0, 255].')


class RetinexOutput(_Image):
    """
    Signed output X of a color constancy model.

    Parameters
    ----------
    data : array-like, shape = [height, width, 3]
    signed : bool, optional (default=True).
        False for models whose output already lies in [0, 255] (gray world).
    """

    def __init__(self, data, signed=True):
        self.signed = signed
        super().__init__(data)


def image_like(img, data):
    """
    Build a container of the same kind as `img` around new data.
    """
    if isinstance(img, RetinexOutput):
        return RetinexOutput(data, signed=img.signed)
    if isinstance(img, EncodedImage):
        return EncodedImage(data, check_range=img.check_range)
    return type(img)(data)


@dataclass(frozen=True)
class Roi:
    """
    Rectangular region of interest.

    Parameters
    ----------
    x0, y0 : int
        Top-left pixel.
    w, h : int
        Extent in pixels.
    """
    x0: int
    y0: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise RoiError('Roi extent must be at least 1x1, got {}x{}.'.format(self.w, self.h))
        if self.x0 < 0 or self.y0 < 0:
            raise RoiError('Roi origin must be nonnegative, got ({}, {}).'.format(self.x0, self.y0))

    def inside(self, width, height):
        return self.x0 + self.w <= width and self.y0 + self.h <= height

    def overlaps(self, other):
        return not (self.x0 + self.w <= other.x0 or other.x0 + other.w <= self.x0 or
                    self.y0 + self.h <= other.y0 or other.y0 + other.h <= self.y0)

    @property
    def slices(self):
        return slice(self.y0, self.y0 + self.h), slice(self.x0, self.x0 + self.w)


def roi_mean(img, roi):
    """
    Mean value per channel inside a region of interest.

    Parameters
    ----------
    img : LinearImage, EncodedImage or RetinexOutput.
    roi : Roi.

    Returns
    -------
    means : tuple of 3 float
        (r, g, b) means.

    Examples
    --------
    >>> img = EncodedImage(np.full((4, 4, 3), (10, 20, 30)))
    >>> roi_mean(img, Roi(1, 1, 2, 2))
    (10.0, 20.0, 30.0)
    """
    if not roi.inside(img.width, img.height):
        raise RoiError('{} is outside a {}x{} image.'.format(roi, img.width, img.height))
    rows, cols = roi.slices
    means = img.data[rows, cols].reshape(-1, 3).mean(axis=0)
    return tuple(float(m) for m in means)


def _read_header(raw, n_tokens=4):
    """
    Split a PNM-style header into whitespace separated tokens.

    Returns the list of ``(token, offset)`` and the offset of the payload,
    which starts after the single whitespace byte following the last token.
    """
    pos = 0
    tokens = []
    n = len(raw)
    while len(tokens) < n_tokens:
        while pos < n and (raw[pos:pos + 1].isspace() or raw[pos:pos + 1] == b'#'):
            if raw[pos:pos + 1] == b'#':
                while pos < n and raw[pos:pos + 1] not in (b'\n', b'\r'):
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and not raw[pos:pos + 1].isspace() and raw[pos:pos + 1] != b'#':
            pos += 1
        if start == pos:
            raise ImageFormatError('Unexpected end of header', offset=start)
        tokens.append((raw[start:pos], start))
    if pos >= n or not raw[pos:pos + 1].isspace():
        raise ImageFormatError('Missing whitespace after header', offset=pos)
    return tokens, pos + 1


def _parse_int(token, offset, name):
    try:
        value = int(token)
    except ValueError:
        raise ImageFormatError('Invalid {} {!r}'.format(name, token), offset=offset)
    if value <= 0:
        raise ImageFormatError('{} must be positive, got {}'.format(name, value), offset=offset)
    return value


def _payload(raw, start, expected, width, height):
    payload = raw[start:]
    if len(payload) != expected:
        # short files fail at their end, long ones at the first extra byte
        raise TruncatedImageError(
            'Payload has {} bytes, {}x{} image needs {}'.format(
                len(payload), width, height, expected),
            offset=min(len(raw), start + expected))
    return payload


def _decode_ppm(raw):
    tokens, start = _read_header(raw)
    width = _parse_int(*tokens[1], name='width')
    height = _parse_int(*tokens[2], name='height')
    maxval = _parse_int(*tokens[3], name='maxval')
    if maxval > 65535:
        raise ImageFormatError('Unsupported maxval {}'.format(maxval), offset=tokens[3][1])

    dtype = np.dtype('u1') if maxval < 256 else np.dtype('>u2')
    expected = width * height * 3 * dtype.itemsize
    payload = _payload(raw, start, expected, width, height)

    data = np.frombuffer(payload, dtype=dtype).reshape(height, width, 3)
    if maxval < 256:
        return EncodedImage(data)
    return LinearImage(data)


def _decode_pfm(raw):
    tokens, start = _read_header(raw)
    n_channels = 3 if tokens[0][0] == b'PF' else 1
    width = _parse_int(*tokens[1], name='width')
    height = _parse_int(*tokens[2], name='height')
    try:
        scale = float(tokens[3][0])
    except ValueError:
        raise ImageFormatError('Invalid scale {!r}'.format(tokens[3][0]), offset=tokens[3][1])
    if scale == 0 or not np.isfinite(scale):
        raise ImageFormatError('Scale must be finite and non-zero', offset=tokens[3][1])

    dtype = np.dtype('<f4') if scale < 0 else np.dtype('>f4')
    expected = width * height * n_channels * dtype.itemsize
    payload = _payload(raw, start, expected, width, height)

    # PFM rows are stored bottom to top
    data = np.frombuffer(payload, dtype=dtype).reshape(height, width, n_channels)[::-1]
    if n_channels == 1:
        data = np.repeat(data, 3, axis=2)
    data = data.astype(np.float64)
    if np.any(data < 0):
        return RetinexOutput(data)
    return LinearImage(data)


def read_image(path):
    """
    Read a binary PPM (P6, 8 or 16 bits) or a PFM file.

    Parameters
    ----------
    path : str.
        Path of the file to read.

    Returns
    -------
    img : EncodedImage, LinearImage or RetinexOutput
        8-bit PPM gives an EncodedImage, 16-bit PPM and PFM give a
        LinearImage. A PFM holding negative samples gives a RetinexOutput.

    Examples
    --------
    >>> img = read_image('/tmp/condition_00.pfm')
    >>> img.width, img.height
    (160, 120)
    """
    with open(path, 'rb') as f:
        raw = f.read()

    magic = raw[:2]
    if magic == b'P6':
        return _decode_ppm(raw)
    if magic in (b'PF', b'Pf'):
        return _decode_pfm(raw)
    raise ImageFormatError('Unknown magic number {!r}'.format(magic), offset=0)


def write_image(img, path):
    """
    Write an image to disk.

    EncodedImage is written as an 8-bit P6 PPM (values rounded to the
    nearest level), LinearImage and RetinexOutput as little-endian RGB PFM.

    Parameters
    ----------
    img : EncodedImage, LinearImage or RetinexOutput.
    path : str.
        Path of the file to create.
    """
    if isinstance(img, EncodedImage):
        levels = np.rint(np.clip(img.data, 0, 255)).astype(np.uint8)
        header = 'P6\n{} {}\n255\n'.format(img.width, img.height).encode('ascii')
        payload = levels.tobytes()
    elif isinstance(img, (LinearImage, RetinexOutput)):
        header = 'PF\n{} {}\n-1.0\n'.format(img.width, img.height).encode('ascii')
        payload = np.ascontiguousarray(img.data[::-1]).astype('<f4').tobytes()
    else:
        raise TypeError('Cannot write object of type {}.'.format(type(img).__name__))

    with open(path, 'wb') as f:
        f.write(header)
        f.write(payload)
