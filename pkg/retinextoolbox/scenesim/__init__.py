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
The :mod:`retinextoolbox.scenesim` module gathers a synthetic darkroom :
Lambertian scenes lit by a white ceiling lamp and two color-variable lamps
on the left and right, a 17-condition illumination suite, and the capture
of three 8-bit exposures merged back into one radiance map.
"""
import csv
from dataclasses import dataclass

import numpy as np
from sklearn.utils import check_random_state

from ..imagecore import LinearImage, Roi, RoiError

__all__ = ['ReflectanceScene', 'Target', 'IlluminationCondition', 'ExposureStack',
           'LED_EMISSION', 'LED_COLORS', 'SCENE_NAMES', 'DEFAULT_EXPOSURES',
           'enumerate_conditions', 'illumination_map', 'render', 'capture_stack',
           'merge_hdr', 'simulate', 'builtin_scenes', 'get_scene',
           'write_manifest', 'read_manifest', 'write_targets', 'read_targets']

WIDTH, HEIGHT = 160, 120
LED_EMISSION = dict(white=(1., 1., 1.),
                    red=(1., .05, .05),
                    yellow=(1., 1., .05),
                    green=(.05, 1., .05),
                    blue=(.05, .05, 1.))
LED_COLORS = ('red', 'yellow', 'green', 'blue')
CEILING_POWER = 400.
LAMP_POWER = 3000.
DEFAULT_EXPOSURES = (1., 1. / 4, 1. / 16)
SCENE_NAMES = ('cartons', 'red-patches', 'green-patches')


@dataclass(frozen=True)
class Target:
    """
    Evaluated area of a scene.

    Parameters
    ----------
    label : str
        ``red``, ``yellow``, ``green``, ``blue`` for cartons, ``dull``,
        ``bright``, ``vivid`` for patches.
    color_class : str
        Hue family of the target.
    roi : Roi
    """
    label: str
    color_class: str
    roi: Roi


class ReflectanceScene:
    """
    Per pixel RGB reflectance and the targets to evaluate.

    Parameters
    ----------
    name : str.
    rho : array-like, shape = [height, width, 3]
        Reflectance in [0, 1].
    targets : list of Target.
        Inside the image and not overlapping each other.
    """

    def __init__(self, name, rho, targets):
        rho = np.array(rho, dtype=np.float64)
        if rho.ndim != 3 or rho.shape[2] != 3:
            raise ValueError('Reflectance must have shape (height, width, 3), got {}.'.format(rho.shape))
        if np.any(rho < 0) or np.any(rho > 1):
            raise ValueError('Reflectance must lie in [0, 1].')
        rho.setflags(write=False)

        targets = list(targets)
        height, width = rho.shape[:2]
        for i, target in enumerate(targets):
            if not target.roi.inside(width, height):
                raise RoiError('Target "{}" is outside the scene.'.format(target.label))
            for other in targets[:i]:
                if target.roi.overlaps(other.roi):
                    raise RoiError('Targets "{}" and "{}" overlap.'.format(other.label, target.label))

        self.name = name
        self.rho = rho
        self.targets = targets

    @property
    def height(self):
        return self.rho.shape[0]

    @property
    def width(self):
        return self.rho.shape[1]

    @property
    def labels(self):
        return [target.label for target in self.targets]

    def scaled(self, factor):
        """
        Copy of the scene with reflectance multiplied by `factor`.
        """
        return ReflectanceScene(self.name, self.rho * factor, self.targets)

    def __repr__(self):
        return 'ReflectanceScene({!r}, {}x{}, targets={})'.format(
            self.name, self.width, self.height, self.labels)


@dataclass(frozen=True)
class IlluminationCondition:
    """
    Colors of the left and right lamps. The ceiling lamp is always white.

    Parameters
    ----------
    index : int
    left, right : str
        Lamp colors, keys of :data:`LED_EMISSION`.
    ceiling : float, optional
        Power of the white ceiling lamp.
    lamp_power : float, optional
        Power of each color lamp.
    """
    index: int
    left: str
    right: str
    ceiling: float = CEILING_POWER
    lamp_power: float = LAMP_POWER

    def __post_init__(self):
        for color in (self.left, self.right):
            if color not in LED_EMISSION:
                raise ValueError('Unknown lamp color "{}". Available : {}.'.format(
                    color, ', '.join(LED_EMISSION)))
        if self.ceiling < 0 or self.lamp_power < 0:
            raise ValueError('Lamp powers must be nonnegative.')

    def gains(self, side):
        color = self.left if side == 'left' else self.right
        return self.lamp_power * np.asarray(LED_EMISSION[color])

    @staticmethod
    def weights(width):
        """
        Linear cross-fade of the left and right lamps across the columns.
        """
        w_right = np.arange(width, dtype=np.float64) / max(width - 1, 1)
        return 1. - w_right, w_right


def enumerate_conditions(**kwargs):
    """
    The 17 illumination conditions : every (left, right) combination of
    red, yellow, green and blue lamps, then all lamps white.

    Parameters
    ----------
    **kwargs :
        Passed to :class:`IlluminationCondition` (ceiling, lamp_power).

    Returns
    -------
    conditions : list of IlluminationCondition
    """
    pairs = [(left, right) for left in LED_COLORS for right in LED_COLORS]
    pairs.append(('white', 'white'))
    return [IlluminationCondition(i, left, right, **kwargs) for i, (left, right) in enumerate(pairs)]


def illumination_map(condition, width=WIDTH, height=HEIGHT):
    """
    Illuminant E at every pixel, shape ``(height, width, 3)``.
    """
    w_left, w_right = condition.weights(width)
    row = (condition.ceiling +
           w_left[:, None] * condition.gains('left') +
           w_right[:, None] * condition.gains('right'))
    return np.broadcast_to(row, (height, width, 3))


def render(scene, condition):
    """
    Radiance of a Lambertian scene : reflectance times illuminant, per channel.

    Parameters
    ----------
    scene : ReflectanceScene.
    condition : IlluminationCondition.

    Returns
    -------
    img : LinearImage
    """
    return LinearImage(scene.rho * illumination_map(condition, scene.width, scene.height))


@dataclass(frozen=True)
class ExposureStack:
    """
    8-bit captures of the same radiance map, longest exposure first.

    Parameters
    ----------
    captures : tuple of np.ndarray (uint8)
    exposures : tuple of float
        Strictly decreasing exposure multipliers.
    """
    captures: tuple
    exposures: tuple

    def __post_init__(self):
        if len(self.captures) != len(self.exposures) or not self.captures:
            raise ValueError('One capture per exposure is needed.')
        _check_exposures(self.exposures)
        shapes = set(c.shape for c in self.captures)
        if len(shapes) != 1:
            raise ValueError('Captures must share the same shape, got {}.'.format(shapes))


def _check_exposures(exposures):
    exposures = tuple(float(t) for t in exposures)
    if not exposures or exposures[-1] <= 0 or any(a <= b for a, b in zip(exposures, exposures[1:])):
        raise ValueError('Exposures must be positive and strictly decreasing, got {}.'.format(exposures))
    return exposures


def capture_stack(img, exposures=DEFAULT_EXPOSURES):
    """
    Simulate 8-bit captures ``clamp(round(t * I), 0, 255)`` for each exposure t.

    Parameters
    ----------
    img : LinearImage.
    exposures : tuple of float, optional (default=(1, 1/4, 1/16)).
        Longest first.

    Returns
    -------
    stack : ExposureStack
    """
    exposures = _check_exposures(exposures)
    captures = tuple(np.clip(np.rint(t * img.data), 0, 255).astype(np.uint8) for t in exposures)
    return ExposureStack(captures, exposures)


def merge_hdr(stack, saturation=255):
    """
    Merge captures by replacing saturated pixels with shorter exposures.

    Each pixel and channel takes the longest exposure whose value is below
    `saturation`, rescaled by its exposure time. Pixels saturated in every
    capture get ``255 / t_short``.

    Parameters
    ----------
    stack : ExposureStack.
    saturation : int, optional (default=255).
        Values greater or equal are saturated.

    Returns
    -------
    img : LinearImage
    """
    out = np.full(stack.captures[0].shape, 255. / stack.exposures[-1])
    done = np.zeros(out.shape, dtype=bool)
    for capture, t in zip(stack.captures, stack.exposures):
        usable = (capture < saturation) & ~done
        out[usable] = capture[usable] / t
        done |= usable
    return LinearImage(out)


def simulate(scene, condition, exposures=DEFAULT_EXPOSURES, saturation=255):
    """
    Render, capture and merge one illumination condition.
    """
    return merge_hdr(capture_stack(render(scene, condition), exposures), saturation)


def _texture(rng, n_rectangles, low, high, colored, height=HEIGHT, width=WIDTH):
    canvas = np.full((height, width, 3), (low + high) / 2.)
    for _ in range(n_rectangles):
        x0, y0 = rng.randint(0, width), rng.randint(0, height)
        w, h = rng.randint(8, 40), rng.randint(8, 30)
        value = rng.uniform(low, high, 3) if colored else rng.uniform(low, high)
        canvas[y0:y0 + h, x0:x0 + w] = value
    return canvas


def _carton_scene(rng):
    rho = _texture(rng, 40, .35, .55, colored=False)
    # left to right. Print-like reflectances, no channel below .16: a
    # global gain error then shifts hue as much as the carton chroma does.
    cartons = [('green', (.20, .50, .25)),
               ('yellow', (.65, .58, .18)),
               ('blue', (.18, .28, .60)),
               ('red', (.62, .18, .16))]
    targets = []
    for i, (label, reflectance) in enumerate(cartons):
        x0 = 18 + 36 * i
        rho[35:85, x0:x0 + 20] = reflectance
        targets.append(Target(label, label, Roi(x0 + 9, 59, 3, 3)))
    return ReflectanceScene('cartons', rho, targets)


def _patch_scene(rng, hue):
    rho = _texture(rng, 60, .15, .65, colored=True)
    main = 0 if hue == 'red' else 1

    def chroma(share):
        weights = np.full(3, (1. - share) / 2.)
        weights[main] = share
        return weights

    # bright : same chroma as dull, larger sum. vivid : same sum, more chroma.
    patches = [('dull', .9 * chroma(.5)),
               ('bright', 1.5 * chroma(.5)),
               ('vivid', .9 * chroma(.7))]
    targets = []
    for i, (label, reflectance) in enumerate(patches):
        x0 = 28 + 40 * i
        rho[48:72, x0:x0 + 24] = reflectance
        targets.append(Target(label, hue, Roi(x0 + 7, 55, 10, 10)))
    return ReflectanceScene('{}-patches'.format(hue), rho, targets)


def get_scene(name, random_state=0):
    """
    Build one of the scenes of :data:`SCENE_NAMES`.

    Parameters
    ----------
    name : str.
        ``cartons``, ``red-patches`` or ``green-patches``.
    random_state : int, RandomState instance or None, optional (default=0).
        Seed of the background texture.

    Returns
    -------
    scene : ReflectanceScene
    """
    rng = check_random_state(random_state)
    if name == 'cartons':
        return _carton_scene(rng)
    if name in ('red-patches', 'green-patches'):
        return _patch_scene(rng, name.split('-')[0])
    raise ValueError('Unknown scene "{}". Available : {}.'.format(name, ', '.join(SCENE_NAMES)))


def builtin_scenes(random_state=0):
    """
    The carton scene (four hues, 3x3 targets) and the red and green patch
    scenes (dull, bright and vivid 10x10 targets).

    Examples
    --------
    >>> [scene.name for scene in builtin_scenes()]
    ['cartons', 'red-patches', 'green-patches']
    """
    rng = check_random_state(random_state)
    return [get_scene(name, rng) for name in SCENE_NAMES]


def write_manifest(conditions, path):
    """
    Write one ``index,left,right`` line per condition.
    """
    with open(path, 'w') as f:
        for c in conditions:
            f.write('{},{},{}\n'.format(c.index, c.left, c.right))


def read_manifest(path, **kwargs):
    """
    Read conditions written by :func:`write_manifest`.
    """
    conditions = []
    with open(path) as f:
        for n, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(',')
            if len(fields) != 3:
                raise ValueError('{} line {} : expected "index,left,right", got "{}".'.format(
                    path, n, line))
            conditions.append(IlluminationCondition(int(fields[0]), fields[1], fields[2], **kwargs))
    return conditions


def write_targets(targets, path):
    """
    Write targets as ``label,color_class,x0,y0,w,h``.
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['label', 'color_class', 'x0', 'y0', 'w', 'h'])
        for t in targets:
            writer.writerow([t.label, t.color_class, t.roi.x0, t.roi.y0, t.roi.w, t.roi.h])


def read_targets(path):
    """
    Read targets written by :func:`write_targets`.
    """
    with open(path, newline='') as f:
        return [Target(row['label'], row['color_class'],
                       Roi(int(row['x0']), int(row['y0']), int(row['w']), int(row['h'])))
                for row in csv.DictReader(f)]
