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
Run configuration of the command line : defaults, ``key = value`` file and
command line overrides.
"""
import configparser
import os
from dataclasses import dataclass, replace

import numpy as np

from ..ccmodels import ModelSpec, default_models
from ..scenesim import DEFAULT_EXPOSURES, SCENE_NAMES
from ..spatialfilter import DEFAULT_SIGMAS, FILTER_PATHS

RUN_KEYS = ('scene', 'seed', 'out', 'sigma1', 'sigma2', 'filter', 'gamma',
            'exposures', 'saturation', 'n_jobs')
MODEL_KEYS = ('kind', 'gamma', 'sigma1', 'sigma2', 'filter')
DEFAULT_GAMMAS = (0., 3., 6., 9.)
SWEEP_GAMMAS = tuple(float(g) for g in np.arange(0., 12.25, .5))

CONFIG_HELP = """\
configuration file (--config) :
  [run]
  scene = cartons | red-patches | green-patches
  seed = 0
  out = out
  sigma1 = {0}
  sigma2 = {1}
  filter = direct | hdc
  gamma = 0, 3, 6, 9          (log rows and curves, or the sweep-gamma grid)
  exposures = 1, 0.25, 0.0625
  saturation = 255
  n_jobs = 1

  [model NAME]                (one section per model, replaces the defaults)
  kind = log | nr | linear | gw
  gamma = 6
  sigma1 = {0}
  sigma2 = {1}
  filter = direct | hdc

Command line options override the file.""".format(*DEFAULT_SIGMAS)


def _floats(text):
    return tuple(float(v) for v in text.replace(',', ' ').split())


@dataclass
class RunConfig:
    """
    Everything a pipeline command needs.

    Parameters
    ----------
    scene : str, optional (default='cartons').
    seed : int, optional (default=0).
        Seed of the scene texture.
    out : str, optional (default='out').
        Output directory.
    models : list of ModelSpec or None, optional (default=None).
        None gives the log models of `gammas`, linear, Naka-Rushton and gray world.
    gammas : tuple of float or None, optional (default=None).
        Log rows of the default models, or the grid of ``sweep-gamma``.
    sigma1, sigma2 : float, optional (default=(1.057, 17.964)).
    filter_path : str, optional (default='direct').
    exposures : tuple of float, optional (default=(1, 1/4, 1/16)).
    saturation : int, optional (default=255).
    n_jobs : int, optional (default=1).
    verbose : int, optional (default=0).
    save_images : bool, optional (default=False).
        Write the displayed output of every model and condition as P6.
    save_stages : bool, optional (default=False).
        Write the N, F1 and F2 stages of every retinex run as P6 and X as PFM.
    """
    scene: str = 'cartons'
    seed: int = 0
    out: str = 'out'
    models: list = None
    gammas: tuple = None
    sigma1: float = DEFAULT_SIGMAS[0]
    sigma2: float = DEFAULT_SIGMAS[1]
    filter_path: str = 'direct'
    exposures: tuple = DEFAULT_EXPOSURES
    saturation: int = 255
    n_jobs: int = 1
    verbose: int = 0
    save_images: bool = False
    save_stages: bool = False

    def __post_init__(self):
        if self.scene not in SCENE_NAMES:
            raise ValueError('Unknown scene "{}". Available : {}.'.format(
                self.scene, ', '.join(SCENE_NAMES)))
        if self.filter_path not in FILTER_PATHS:
            raise ValueError('Unknown filter path "{}".'.format(self.filter_path))
        if not self.sigma1 < self.sigma2:
            raise ValueError('sigma1 ({}) must be lower than sigma2 ({}).'.format(
                self.sigma1, self.sigma2))
        if self.gammas is not None:
            self.gammas = tuple(float(g) for g in self.gammas)
            if not self.gammas or not np.all(np.isfinite(self.gammas)):
                raise ValueError('gamma values must be finite, got {}.'.format(self.gammas))
        self.exposures = tuple(float(t) for t in self.exposures)
        if not 0 < self.saturation <= 255:
            raise ValueError('saturation must be in ]0, 255], got {}.'.format(self.saturation))
        if self.models is None:
            self.models = default_models(self.gammas or DEFAULT_GAMMAS, **self.model_kwargs)
        self.models = _unique_labels(self.models)

    @property
    def model_kwargs(self):
        return dict(sigma1=self.sigma1, sigma2=self.sigma2, filter_path=self.filter_path)

    @property
    def sweep_models(self):
        """
        Log models over `gammas`, or 0 to 12 by steps of 0.5.
        """
        return [ModelSpec('log', gamma=g, **self.model_kwargs)
                for g in (self.gammas or SWEEP_GAMMAS)]

    def path(self, name):
        return os.path.join(self.out, name)


def _unique_labels(models):
    seen = {}
    unique = []
    for spec in models:
        label = spec.label
        seen[label] = seen.get(label, 0) + 1
        if seen[label] > 1:
            spec = replace(spec, name='{}#{}'.format(label, seen[label]))
        unique.append(spec)
    return unique


def read_config(path):
    """
    Read a ``key = value`` configuration file.

    Parameters
    ----------
    path : str.

    Returns
    -------
    run : dict
        RunConfig keyword arguments from the ``[run]`` section.
    models : list of ModelSpec
        One per ``[model NAME]`` section, labelled NAME.
    """
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise IOError('Cannot read configuration file "{}".'.format(path))

    run = {}
    if parser.has_section('run'):
        section = parser['run']
        unknown = set(section) - set(RUN_KEYS)
        if unknown:
            raise ValueError('Unknown keys in [run] : {}.'.format(', '.join(sorted(unknown))))
        converters = dict(scene=str, seed=int, out=str, sigma1=float, sigma2=float,
                          filter=str, gamma=_floats, exposures=_floats,
                          saturation=int, n_jobs=int)
        renamed = dict(filter='filter_path', gamma='gammas')
        for key, value in section.items():
            run[renamed.get(key, key)] = converters[key](value)

    models = []
    for name in parser.sections():
        if not name.startswith('model '):
            if name != 'run':
                raise ValueError('Unknown section [{}].'.format(name))
            continue
        section = parser[name]
        unknown = set(section) - set(MODEL_KEYS)
        if unknown:
            raise ValueError('Unknown keys in [{}] : {}.'.format(name, ', '.join(sorted(unknown))))
        kwargs = dict(sigma1=run.get('sigma1', DEFAULT_SIGMAS[0]),
                      sigma2=run.get('sigma2', DEFAULT_SIGMAS[1]),
                      filter_path=run.get('filter_path', 'direct'))
        for key in ('gamma', 'sigma1', 'sigma2'):
            if key in section:
                kwargs[key] = section.getfloat(key)
        if 'filter' in section:
            kwargs['filter_path'] = section['filter']
        spec = ModelSpec.from_string(section.get('kind', 'log'), **kwargs)
        models.append(replace(spec, name=name[len('model '):].strip()))
    return run, models


def config_from_args(args):
    """
    Build a :class:`RunConfig` from parsed command line arguments.

    Values of the ``--config`` file are read first and overridden by the
    options given on the command line.
    """
    run, file_models = read_config(args.config) if args.config else ({}, [])

    overrides = dict(scene=args.scene, seed=args.seed, out=args.out,
                     sigma1=args.sigma1, sigma2=args.sigma2, filter_path=args.filter,
                     gammas=args.gamma, exposures=args.exposures,
                     saturation=args.saturation, n_jobs=args.n_jobs)
    run.update({key: value for key, value in overrides.items() if value is not None})
    run['verbose'] = args.verbose
    run['save_images'] = args.save_images
    run['save_stages'] = args.save_stages

    kwargs = dict(sigma1=run.get('sigma1', DEFAULT_SIGMAS[0]),
                  sigma2=run.get('sigma2', DEFAULT_SIGMAS[1]),
                  filter_path=run.get('filter_path', 'direct'))
    if args.model:
        run['models'] = [ModelSpec.from_string(text, **kwargs) for text in args.model]
    elif file_models and args.gamma is None:
        run['models'] = file_models
    return RunConfig(**run)
