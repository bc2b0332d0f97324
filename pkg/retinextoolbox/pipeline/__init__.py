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
The :mod:`retinextoolbox.pipeline` module runs the color discrimination
experiment from the command line : ``generate`` the illumination suite,
``run`` every model on it, ``evaluate`` the Fisher criteria,
``sweep-gamma`` over the compression exponent of the log model and write
the encoder transfer ``curves``.
"""
import argparse
import csv
import os
import re
import sys
from contextlib import contextmanager

import numpy as np
from joblib import Parallel, delayed

from .. import __version__
from ..ccmodels import MODEL_KINDS, run_cs_retinex, run_model, to_display
from ..colorspace import SAMPLE_FIELDS, ColorSample, sample_color
from ..encoding import compute_bounds, transfer_curves
from ..imagecore import LinearImage, read_image, roi_mean, write_image
from ..internal_tools import ProgressBar, push_feedback
from ..metrics import HUE_PAIRS, PATCH_PAIRS, ReportError, build_report, histograms, \
    sample_sets, write_histograms
from ..scenesim import SCENE_NAMES, enumerate_conditions, get_scene, read_manifest, \
    read_targets, simulate, write_manifest, write_targets
from ..spatialfilter import FILTER_PATHS
from ._config import CONFIG_HELP, DEFAULT_GAMMAS, RunConfig, config_from_args, read_config

__all__ = ['PipelineError', 'RunConfig', 'read_config', 'simulate_suite', 'collect_samples',
           'evaluate_samples', 'write_samples', 'read_samples', 'cmd_generate',
           'cmd_run', 'cmd_evaluate', 'cmd_sweep_gamma', 'cmd_curves', 'main']

HUE_LABELS = {'red', 'yellow', 'green', 'blue'}
PATCH_LABELS = {'dull', 'bright', 'vivid'}
CURVE_POINTS = 256


class PipelineError(RuntimeError):
    """
    A pipeline stage failed.

    Parameters
    ----------
    stage : str
        Name of the failing stage.
    message : str
    """

    def __init__(self, stage, message):
        super().__init__('{} failed : {}'.format(stage, message))
        self.stage = stage


@contextmanager
def _stage(name):
    try:
        yield
    except PipelineError:
        raise
    except Exception as e:
        raise PipelineError(name, '{}: {}'.format(type(e).__name__, e)) from e


def _condition_file(index):
    return 'condition_{:02d}.pfm'.format(index)


def simulate_suite(scene, config):
    """
    Merged radiance map of `scene` under every illumination condition.

    Parameters
    ----------
    scene : ReflectanceScene.
    config : RunConfig.
        Uses exposures, saturation, n_jobs and verbose.

    Returns
    -------
    images : list of LinearImage
        One per condition of :func:`enumerate_conditions`.
    """
    conditions = enumerate_conditions()
    return Parallel(n_jobs=config.n_jobs, verbose=max(config.verbose - 1, 0))(
        delayed(simulate)(scene, condition, config.exposures, config.saturation)
        for condition in conditions)


def _safe_name(label):
    return re.sub(r'[^A-Za-z0-9.]+', '_', label).strip('_')


def _sample_condition(img, condition, targets, spec, image_dir=None, stage_dir=None):
    name = '{}_{}'.format(_safe_name(spec.label), _condition_file(condition)[:-4])
    if stage_dir is not None and spec.is_retinex:
        stages = run_cs_retinex(img, spec, return_stages=True)
        for stage in ('N', 'F1', 'F2'):
            write_image(stages[stage], os.path.join(stage_dir, '{}_{}.ppm'.format(name, stage)))
        X = stages['X']
        write_image(X, os.path.join(stage_dir, '{}_X.pfm'.format(name)))
    else:
        X = run_model(img, spec)
    display = to_display(X)
    if image_dir is not None:
        write_image(display, os.path.join(image_dir, name + '.ppm'))
    return [sample_color(spec.label, condition, target.label,
                         roi_mean(display, target.roi), roi_mean(X, target.roi))
            for target in targets]


def collect_samples(images, conditions, targets, models, n_jobs=1, verbose=0, image_dir=None,
                    stage_dir=None):
    """
    Run every model on every condition and measure every target.

    Parameters
    ----------
    images : list of LinearImage.
    conditions : list of IlluminationCondition.
        Same order as `images`.
    targets : list of Target.
    models : list of ModelSpec.
    n_jobs : int, optional (default=1).
        Number of joblib workers.
    verbose : int, optional (default=0).
    image_dir : str or None, optional (default=None).
        If given, the displayed output of each run is written there as P6.
    stage_dir : str or None, optional (default=None).
        If given, the N, F1 and F2 stages of each retinex run are written
        there as P6 and X as PFM.

    Returns
    -------
    samples : list of ColorSample
        Ordered by model, condition, then target.
    """
    if len(images) != len(conditions):
        raise ValueError('{} images for {} conditions.'.format(len(images), len(conditions)))
    for directory in (image_dir, stage_dir):
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    jobs = [(img, condition.index, spec) for spec in models
            for img, condition in zip(images, conditions)]
    results = Parallel(n_jobs=n_jobs, verbose=max(verbose - 1, 0))(
        delayed(_sample_condition)(img, index, targets, spec, image_dir, stage_dir)
        for img, index, spec in jobs)
    return [sample for result in results for sample in result]


def evaluate_samples(samples, targets):
    """
    Fisher report of the pairs matching the targets.

    Carton targets (red, yellow, green, blue) are compared by hue and
    theta, patch targets (dull, bright, vivid) by r, saturation and
    brightness.

    Parameters
    ----------
    samples : list of ColorSample.
    targets : list of Target.

    Returns
    -------
    report : FisherReport
    """
    labels = {target.label for target in targets}
    if HUE_LABELS <= labels:
        pairs = HUE_PAIRS
    elif PATCH_LABELS <= labels:
        pairs = PATCH_PAIRS
    else:
        raise ReportError('No pair definition matches targets {}.'.format(sorted(labels)))
    return build_report(sample_sets(samples), pairs)


def write_samples(samples, path):
    """
    Write samples as ``model,condition,target,h,s,v,o_rg,o_yb,r,theta``.
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SAMPLE_FIELDS)
        for sample in samples:
            row = sample.as_row()
            writer.writerow(row[:3] + ['%.10g' % value for value in row[3:]])


def read_samples(path):
    """
    Read samples written by :func:`write_samples`.
    """
    with open(path, newline='') as f:
        return [ColorSample(row['model'], int(row['condition']), row['target'],
                            *(float(row[name]) for name in SAMPLE_FIELDS[3:]))
                for row in csv.DictReader(f)]


def _require(config, names, stage):
    missing = [name for name in names if not os.path.exists(config.path(name))]
    if missing:
        raise PipelineError(stage, 'missing {} in "{}", run the previous stage first.'.format(
            ', '.join(missing), config.out))


def _load_dataset(config, stage):
    _require(config, ['targets.csv', 'manifest.txt'], stage)
    conditions = read_manifest(config.path('manifest.txt'))
    _require(config, [_condition_file(c.index) for c in conditions], stage)
    images = [read_image(config.path(_condition_file(c.index))) for c in conditions]
    for c, img in zip(conditions, images):
        if not isinstance(img, LinearImage):
            raise PipelineError(stage, '{} is not a radiance map.'.format(_condition_file(c.index)))
    return images, conditions, read_targets(config.path('targets.csv'))


def cmd_generate(config):
    """
    Write the scene, its targets, the condition manifest and the 17 merged
    radiance maps to ``config.out``.

    Returns
    -------
    images : list of LinearImage
    """
    with _stage('generate'):
        os.makedirs(config.out, exist_ok=True)
        scene = get_scene(config.scene, config.seed)
        conditions = enumerate_conditions()
        if config.verbose:
            push_feedback('Simulating {} conditions of scene "{}".'.format(len(conditions), scene.name))

        images = simulate_suite(scene, config)
        write_image(LinearImage(scene.rho), config.path('scene.pfm'))
        write_targets(scene.targets, config.path('targets.csv'))
        write_manifest(conditions, config.path('manifest.txt'))

        pb = ProgressBar(len(images), 'Writing conditions') if config.verbose else None
        for condition, img in zip(conditions, images):
            write_image(img, config.path(_condition_file(condition.index)))
            if pb:
                pb.add_position()
    return images


def cmd_run(config):
    """
    Run the configured models on the generated suite and write ``samples.csv``.

    Returns
    -------
    samples : list of ColorSample
    """
    with _stage('run'):
        images, conditions, targets = _load_dataset(config, 'run')
        if config.verbose:
            push_feedback('Running {} models on {} conditions.'.format(
                len(config.models), len(conditions)))
        image_dir = config.path('images') if config.save_images else None
        stage_dir = config.path('stages') if config.save_stages else None
        samples = collect_samples(images, conditions, targets, config.models,
                                  config.n_jobs, config.verbose, image_dir, stage_dir)
        write_samples(samples, config.path('samples.csv'))
    return samples


def cmd_evaluate(config):
    """
    Compute the Fisher report and histograms from ``samples.csv``.

    Writes ``fisher.csv`` and ``histograms.csv``.

    Returns
    -------
    report : FisherReport
    """
    with _stage('evaluate'):
        _require(config, ['samples.csv', 'targets.csv'], 'evaluate')
        samples = read_samples(config.path('samples.csv'))
        report = evaluate_samples(samples, read_targets(config.path('targets.csv')))
        report.to_csv(config.path('fisher.csv'))
        write_histograms(histograms(samples), config.path('histograms.csv'))
        if config.verbose:
            push_feedback('Fisher criteria of {} models written to {}.'.format(
                len(report.models), config.path('fisher.csv')))
    return report


def cmd_sweep_gamma(config):
    """
    Fisher report of the log model over a grid of gamma values.

    Writes ``gamma_sweep.csv`` with ``gamma,attribute,pair,D`` rows.

    Returns
    -------
    report : FisherReport
    """
    with _stage('sweep-gamma'):
        images, conditions, targets = _load_dataset(config, 'sweep-gamma')
        models = config.sweep_models
        gammas = {spec.label: spec.gamma for spec in models}
        samples = collect_samples(images, conditions, targets, models,
                                  config.n_jobs, config.verbose)
        report = evaluate_samples(samples, targets)
        with open(config.path('gamma_sweep.csv'), 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['gamma', 'attribute', 'pair', 'D'])
            for row in report.rows:
                writer.writerow(['{:g}'.format(gammas[row.model]), row.attribute,
                                 row.pair, '{:.6g}'.format(row.D)])
    return report


def cmd_curves(config):
    """
    Write the encoder transfer curves measured on the white-light condition.

    Bounds and semi-saturation come from the three channels of the
    ``white,white`` radiance map pooled together. Writes
    ``encoding_curves.csv`` with ``encoder,gamma,I,value`` rows, one log
    curve per configured gamma then Naka-Rushton and linear.

    Returns
    -------
    rows : list of tuple
        ``(encoder, gamma, I, value)``.
    """
    with _stage('curves'):
        images, conditions, _ = _load_dataset(config, 'curves')
        white = [img for img, c in zip(images, conditions) if (c.left, c.right) == ('white', 'white')]
        if not white:
            raise PipelineError('curves', 'no white,white condition in the manifest.')
        radiance = white[0].data.ravel()
        rows = transfer_curves(compute_bounds(radiance), config.gammas or DEFAULT_GAMMAS,
                               float(np.median(radiance)), CURVE_POINTS)
        with open(config.path('encoding_curves.csv'), 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['encoder', 'gamma', 'I', 'value'])
            for encoder, gamma, I, value in rows:
                writer.writerow([encoder, '' if gamma is None else '{:g}'.format(gamma),
                                 '{:.6g}'.format(I), '{:.6g}'.format(value)])
        if config.verbose:
            push_feedback('Transfer curves written to {}.'.format(config.path('encoding_curves.csv')))
    return rows


_COMMANDS = {'generate': cmd_generate,
             'run': cmd_run,
             'evaluate': cmd_evaluate,
             'sweep-gamma': cmd_sweep_gamma,
             'curves': cmd_curves}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='key = value configuration file')
    common.add_argument('--scene', choices=SCENE_NAMES)
    common.add_argument('--model', action='append',
                        help='model to run, repeatable : log:GAMMA, nr, linear, gw ({})'.format(
                            ', '.join(MODEL_KINDS)))
    common.add_argument('--gamma', type=float, nargs='+',
                        help='gamma values of the log rows and curves (default 0 3 6 9) '
                             'or of the sweep (default 0 to 12 by 0.5)')
    common.add_argument('--sigma1', type=float, help='center sigma (default 1.057)')
    common.add_argument('--sigma2', type=float, help='surround sigma (default 17.964)')
    common.add_argument('--filter', choices=FILTER_PATHS, help='gaussian filter (default direct)')
    common.add_argument('--seed', type=int, help='seed of the scene texture (default 0)')
    common.add_argument('--out', help='output directory (default out)')
    common.add_argument('--exposures', type=float, nargs='+',
                        help='exposure multipliers, longest first (default 1 0.25 0.0625)')
    common.add_argument('--saturation', type=int, help='saturation level of captures (default 255)')
    common.add_argument('--n-jobs', type=int, dest='n_jobs', help='joblib workers (default 1)')
    common.add_argument('--save-images', action='store_true',
                        help='write the displayed output of every model and condition')
    common.add_argument('--save-stages', action='store_true',
                        help='write the N, F1, F2 and X stages of every retinex run')
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(
        prog='retinextoolbox',
        description='Retina-inspired color constancy experiments on a synthetic darkroom.',
        epilog=CONFIG_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--version', action='version', version=__version__)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    for name, func in _COMMANDS.items():
        commands.add_parser(name, parents=[common], help=func.__doc__.strip().split('\n')[0],
                            epilog=CONFIG_HELP,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    return parser


def main(argv=None):
    """
    Command line entry point.

    Parameters
    ----------
    argv : list of str or None, optional (default=None).
        Arguments, None reads ``sys.argv``.

    Returns
    -------
    code : int
        0 on success, 1 when a stage fails.
    """
    args = _build_parser().parse_args(argv)
    try:
        with _stage('config'):
            config = config_from_args(args)
        _COMMANDS[args.command](config)
    except PipelineError as e:
        push_feedback('retinextoolbox: {}'.format(e), sys.stderr)
        return 1
    return 0
