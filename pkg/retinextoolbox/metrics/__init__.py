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
The :mod:`retinextoolbox.metrics` module gathers the Fisher criterion used
to measure how well two targets can be told apart across illumination
conditions, and the tables built from it.
"""
import csv
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

__all__ = ['SampleSet', 'FisherRow', 'FisherReport', 'ReportError', 'ATTRIBUTES',
           'HUE_PAIRS', 'PATCH_PAIRS', 'fisher_criterion', 'circular_align',
           'sample_sets', 'build_report', 'histograms', 'write_histograms']

# attribute name -> ColorSample field
ATTRIBUTES = OrderedDict([('hue', 'h'), ('theta', 'theta'), ('saturation', 's'),
                          ('r', 'r'), ('brightness', 'v')])
CIRCULAR_ATTRIBUTES = ('hue', 'theta')

HUE_PAIRS = [(attribute, a, b)
             for attribute in ('hue', 'theta')
             for a, b in (('red', 'yellow'), ('yellow', 'green'),
                          ('green', 'blue'), ('blue', 'red'))]
PATCH_PAIRS = [('r', 'vivid', 'dull'),
               ('saturation', 'vivid', 'dull'),
               ('brightness', 'bright', 'dull')]

_DEFAULT_BIN_WIDTH = dict(hue=10., theta=10., saturation=5., r=5., brightness=5.)


class ReportError(ValueError):
    """A Fisher report cannot be built from the given samples."""


@dataclass(frozen=True)
class SampleSet:
    """
    Values of one attribute of one target, one value per illumination condition.

    Parameters
    ----------
    label : str
        Target identifier.
    attribute : str
        One of ``hue``, ``theta``, ``saturation``, ``r``, ``brightness``.
    values : tuple of float
        At least two finite values.
    model : str, optional (default='')
        Label of the model that produced the values.
    """
    label: str
    attribute: str
    values: tuple
    model: str = ''

    def __post_init__(self):
        if self.attribute not in ATTRIBUTES:
            raise ValueError('Unknown attribute "{}". Available : {}.'.format(
                self.attribute, ', '.join(ATTRIBUTES)))
        values = tuple(float(v) for v in self.values)
        if len(values) < 2:
            raise ValueError('A sample set needs at least 2 values, got {}.'.format(len(values)))
        if not np.all(np.isfinite(values)):
            raise ValueError('Sample values must be finite.')
        object.__setattr__(self, 'values', values)


def fisher_criterion(a, b):
    """
    Fisher criterion between two sample sets.

    ``D = (mu_b - mu_a) ** 2 / (s_a ** 2 + s_b ** 2)`` with population
    variances (divided by n).

    Parameters
    ----------
    a, b : SampleSet.
        Sets of the same attribute.

    Returns
    -------
    D : float
        ``inf`` if both sets have zero variance but different means, 0 if
        they are also equal.

    Examples
    --------
    >>> a = SampleSet('a', 'hue', (1, 2, 3))
    >>> b = SampleSet('b', 'hue', (5, 6, 7))
    >>> fisher_criterion(a, b)
    12.0
    """
    if a.attribute != b.attribute:
        raise ValueError('Cannot compare "{}" with "{}".'.format(a.attribute, b.attribute))
    return _fisher(np.asarray(a.values), np.asarray(b.values))


def _fisher(values_a, values_b):
    between = (values_b.mean() - values_a.mean()) ** 2
    within = values_a.var() + values_b.var()
    if within == 0:
        return 0. if between == 0 else float('inf')
    return float(between / within)


def circular_align(values):
    """
    Rotate angles so that their circular mean lands on 180 degrees.

    After rotation the values lie in [0, 360) away from the wrap point and
    a linear variance is meaningful.

    Parameters
    ----------
    values : array-like of float.
        Angles in degrees.

    Returns
    -------
    aligned : np.ndarray

    Examples
    --------
    >>> circular_align([10, 350])
    array([190., 170.])
    """
    values = np.asarray(values, dtype=np.float64)
    rad = np.deg2rad(values)
    mean = np.rad2deg(np.arctan2(np.sin(rad).mean(), np.cos(rad).mean()))
    return np.mod(values - mean + 180., 360.)


def sample_sets(samples, min_r=1e-12):
    """
    Group color samples into one :class:`SampleSet` per model, target and attribute.

    Samples with ``r`` below `min_r` are left out of the theta sets since
    their angle is undefined. Sets with less than two values are skipped.

    Parameters
    ----------
    samples : list of ColorSample.
    min_r : float, optional (default=1e-12).

    Returns
    -------
    sets : list of SampleSet
    """
    grouped = OrderedDict()
    for sample in samples:
        grouped.setdefault((sample.model, sample.target), []).append(sample)

    sets = []
    for (model, target), group in grouped.items():
        for attribute, field in ATTRIBUTES.items():
            kept = [s for s in group if attribute != 'theta' or s.r >= min_r]
            if len(kept) >= 2:
                sets.append(SampleSet(target, attribute,
                                      tuple(getattr(s, field) for s in kept), model))
    return sets


@dataclass(frozen=True)
class FisherRow:
    model: str
    attribute: str
    pair: str
    D: float


class FisherReport:
    """
    Fisher criteria per model, attribute and pair of targets.

    Parameters
    ----------
    rows : list of FisherRow.
    """

    def __init__(self, rows):
        self.rows = list(rows)

    def __len__(self):
        return len(self.rows)

    @property
    def models(self):
        return list(OrderedDict.fromkeys(row.model for row in self.rows))

    @property
    def columns(self):
        """
        ``(attribute, pair)`` columns in order of appearance.
        """
        return list(OrderedDict.fromkeys((row.attribute, row.pair) for row in self.rows))

    def value(self, model, attribute, pair):
        for row in self.rows:
            if (row.model, row.attribute, row.pair) == (model, attribute, pair):
                return row.D
        raise KeyError((model, attribute, pair))

    def best(self, attribute, pair):
        """
        Model with the highest criterion for a column.
        """
        column = [row for row in self.rows if (row.attribute, row.pair) == (attribute, pair)]
        if not column:
            raise KeyError((attribute, pair))
        return max(column, key=lambda row: row.D).model

    def marks(self):
        """
        ``'max'``, ``'min'`` or ``''`` for each row, computed per column.
        """
        extremes = {}
        for column in self.columns:
            values = [row.D for row in self.rows if (row.attribute, row.pair) == column]
            extremes[column] = (max(values), min(values))
        out = []
        for row in self.rows:
            high, low = extremes[(row.attribute, row.pair)]
            out.append('max' if row.D == high else 'min' if row.D == low else '')
        return out

    def to_csv(self, path):
        """
        Write ``model,attribute,pair,D,mark`` rows with 6 significant digits.
        """
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['model', 'attribute', 'pair', 'D', 'mark'])
            for row, mark in zip(self.rows, self.marks()):
                writer.writerow([row.model, row.attribute, row.pair, '{:.6g}'.format(row.D), mark])


def build_report(samples, pairs):
    """
    Compute the Fisher criterion of every pair for every model.

    Hue and theta values of the two sets of a pair are rotated together by
    :func:`circular_align` before the criterion is computed.

    Parameters
    ----------
    samples : list of SampleSet.
    pairs : list of tuple (attribute, label_a, label_b).
        E.g. :data:`HUE_PAIRS` or :data:`PATCH_PAIRS`.

    Returns
    -------
    report : FisherReport

    Examples
    --------
    >>> sets = [SampleSet('red', 'hue', (0, 2), 'a'), SampleSet('yellow', 'hue', (58, 62), 'a'),
    ...         SampleSet('red', 'hue', (350, 10), 'b'), SampleSet('yellow', 'hue', (40, 80), 'b')]
    >>> report = build_report(sets, [('hue', 'red', 'yellow')])
    >>> round(report.value('b', 'hue', 'red&yellow'), 6)
    7.2
    >>> report.best('hue', 'red&yellow')
    'a'
    """
    samples = list(samples)
    if not samples:
        raise ReportError('Cannot build a report from an empty sample collection.')

    index = {(s.model, s.label, s.attribute): s for s in samples}
    models = list(OrderedDict.fromkeys(s.model for s in samples))

    rows = []
    for model in models:
        for attribute, label_a, label_b in pairs:
            pair = '{}&{}'.format(label_a, label_b)
            try:
                set_a = index[(model, label_a, attribute)]
                set_b = index[(model, label_b, attribute)]
            except KeyError:
                raise ReportError('Missing samples for pair "{}" ({}) of model "{}".'.format(
                    pair, attribute, model))
            values_a = np.asarray(set_a.values)
            values_b = np.asarray(set_b.values)
            if attribute in CIRCULAR_ATTRIBUTES:
                aligned = circular_align(np.concatenate([values_a, values_b]))
                values_a, values_b = aligned[:values_a.size], aligned[values_a.size:]
            rows.append(FisherRow(model, attribute, pair, _fisher(values_a, values_b)))
    return FisherReport(rows)


def histograms(samples, bin_width=None, min_r=1e-12):
    """
    Histogram of every attribute for every model and target.

    Bin edges are shared by all models of an attribute so that histograms
    can be compared side by side.

    Parameters
    ----------
    samples : list of ColorSample.
    bin_width : dict or None, optional (default=None).
        Bin width per attribute. Defaults to 10 degrees for hue/theta and
        5 levels otherwise.
    min_r : float, optional (default=1e-12).
        Samples with a smaller r are left out of theta histograms.

    Returns
    -------
    rows : list of tuple
        ``(model, attribute, target, bin_left, count)``.
    """
    widths = dict(_DEFAULT_BIN_WIDTH)
    if bin_width:
        widths.update(bin_width)

    samples = list(samples)
    rows = []
    for attribute, field in ATTRIBUTES.items():
        kept = [s for s in samples if attribute != 'theta' or s.r >= min_r]
        if not kept:
            continue
        width = widths[attribute]
        if attribute in CIRCULAR_ATTRIBUTES:
            upper = 360.
        else:
            upper = max(255., max(getattr(s, field) for s in kept))
            upper = np.ceil(upper / width) * width
        edges = np.arange(0., upper + width / 2., width)

        grouped = OrderedDict()
        for s in kept:
            grouped.setdefault((s.model, s.target), []).append(getattr(s, field))
        for (model, target), values in grouped.items():
            counts, _ = np.histogram(values, bins=edges)
            rows += [(model, attribute, target, float(left), int(count))
                     for left, count in zip(edges[:-1], counts)]
    return rows


def write_histograms(rows, path):
    """
    Write rows from :func:`histograms` as ``model,attribute,target,bin_left,count``.
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['model', 'attribute', 'target', 'bin_left', 'count'])
        for model, attribute, target, left, count in rows:
            writer.writerow([model, attribute, target, '{:g}'.format(left), count])
