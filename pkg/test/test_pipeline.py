# -*- coding: utf-8 -*-
import csv
import filecmp
import os
import tempfile
import unittest

import numpy as np
from retinextoolbox import pipeline, scenesim
from retinextoolbox.ccmodels import ModelSpec, run_model
from retinextoolbox.imagecore import RetinexOutput, read_image
from retinextoolbox.pipeline import PipelineError, RunConfig

tmp_dir = tempfile.mkdtemp()
CSV_FILES = ['samples.csv', 'fisher.csv', 'histograms.csv']


def out_dir(name):
    return os.path.join(tmp_dir, name)


def read_rows(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def full_run(name, *extra):
    for command in ('generate', 'run', 'evaluate'):
        assert(pipeline.main([command, '--out', out_dir(name)] + list(extra)) == 0)


class TestConfig(unittest.TestCase):

    def test_defaults(self):
        config = RunConfig()
        assert([spec.label for spec in config.models] ==
               ['log(gamma=0)', 'log(gamma=3)', 'log(gamma=6)', 'log(gamma=9)', 'linear', 'nr', 'gw'])
        assert(len(config.sweep_models) == 25)
        assert(config.path('fisher.csv') == os.path.join('out', 'fisher.csv'))

    def test_validation(self):
        self.assertRaises(ValueError, RunConfig, sigma1=20., sigma2=10.)
        self.assertRaises(ValueError, RunConfig, gammas=(6., np.nan))
        self.assertRaises(ValueError, RunConfig, scene='mondrian')
        self.assertRaises(ValueError, RunConfig, filter_path='fft')

    def test_duplicate_labels(self):
        config = RunConfig(models=[ModelSpec('nr'), ModelSpec('nr')])
        assert([spec.label for spec in config.models] == ['nr', 'nr#2'])

    def test_config_file(self):
        path = os.path.join(tmp_dir, 'run.ini')
        with open(path, 'w') as f:
            f.write('[run]\nscene = green-patches\nseed = 3\nfilter = hdc\n'
                    'exposures = 1, 0.5, 0.125\n\n'
                    '[model compressed]\nkind = log\ngamma = 2\n\n'
                    '[model naka]\nkind = nr\nsigma2 = 12\n')
        run, models = pipeline.read_config(path)
        assert(run['scene'] == 'green-patches' and run['seed'] == 3)
        assert(run['exposures'] == (1., .5, .125))
        assert([spec.label for spec in models] == ['compressed', 'naka'])
        assert(models[0].gamma == 2 and models[0].filter_path == 'hdc')
        assert(models[1].sigma2 == 12)

    def test_config_errors(self):
        path = os.path.join(tmp_dir, 'bad.ini')
        with open(path, 'w') as f:
            f.write('[run]\ncolor = red\n')
        self.assertRaises(ValueError, pipeline.read_config, path)
        self.assertRaises(IOError, pipeline.read_config, os.path.join(tmp_dir, 'none.ini'))
        assert(pipeline.main(['generate', '--config', path, '--out', out_dir('bad')]) == 1)


class TestCommands(unittest.TestCase):

    def test_generate(self):
        config = RunConfig(out=out_dir('generate_a'))
        images = pipeline.cmd_generate(config)
        assert(len(images) == 17)
        files = os.listdir(config.out)
        assert(len([name for name in files if name.startswith('condition_')]) == 17)
        assert({'scene.pfm', 'targets.csv', 'manifest.txt'} <= set(files))
        with open(config.path('manifest.txt')) as f:
            assert(len(f.read().splitlines()) == 17)

        pipeline.cmd_generate(RunConfig(out=out_dir('generate_b')))
        match, mismatch, errors = filecmp.cmpfiles(out_dir('generate_a'), out_dir('generate_b'),
                                                   files, shallow=False)
        assert(not mismatch and not errors)

    def test_bad_output_path(self):
        path = os.path.join(tmp_dir, 'a_file')
        open(path, 'w').close()
        with self.assertRaises(PipelineError) as ctx:
            pipeline.cmd_generate(RunConfig(out=path))
        assert(ctx.exception.stage == 'generate')
        assert(pipeline.main(['generate', '--out', path]) == 1)

    def test_missing_dataset(self):
        with self.assertRaises(PipelineError) as ctx:
            pipeline.cmd_run(RunConfig(out=out_dir('empty')))
        assert(ctx.exception.stage == 'run')
        assert(pipeline.main(['evaluate', '--out', out_dir('empty')]) == 1)

    def test_usage_error(self):
        with self.assertRaises(SystemExit) as ctx:
            pipeline.main(['generate', '--filter', 'fft'])
        assert(ctx.exception.code == 2)

    def test_carton_run(self):
        full_run('cartons_a')
        samples = read_rows(os.path.join(out_dir('cartons_a'), 'samples.csv'))
        assert(len(samples) == 7 * 17 * 4)
        assert(list(samples[0]) == list(pipeline.SAMPLE_FIELDS))
        fisher = read_rows(os.path.join(out_dir('cartons_a'), 'fisher.csv'))
        assert(len(fisher) == 7 * 8)
        assert({row['attribute'] for row in fisher} == {'hue', 'theta'})
        assert(sum(row['mark'] == 'max' for row in fisher) >= 8)

        full_run('cartons_b')
        for name in CSV_FILES:
            assert(filecmp.cmp(os.path.join(out_dir('cartons_a'), name),
                               os.path.join(out_dir('cartons_b'), name), shallow=False))

    def test_patch_run(self):
        full_run('patches', '--scene', 'red-patches', '--model', 'log:6', '--model', 'gw')
        fisher = read_rows(os.path.join(out_dir('patches'), 'fisher.csv'))
        assert([(row['attribute'], row['pair']) for row in fisher[:3]] ==
               [('r', 'vivid&dull'), ('saturation', 'vivid&dull'), ('brightness', 'bright&dull')])
        assert(len(fisher) == 2 * 3)

    def test_duplicate_models(self):
        full_run('twice', '--model', 'nr', '--model', 'nr', '--filter', 'hdc')
        fisher = read_rows(os.path.join(out_dir('twice'), 'fisher.csv'))
        values = {}
        for row in fisher:
            values.setdefault((row['attribute'], row['pair']), []).append(row['D'])
        assert(all(len(v) == 2 and v[0] == v[1] for v in values.values()))

    def test_sweep_and_images(self):
        name = out_dir('sweep')
        assert(pipeline.main(['generate', '--out', name, '--seed', '2']) == 0)
        assert(pipeline.main(['sweep-gamma', '--out', name, '--gamma', '3', '6']) == 0)
        rows = read_rows(os.path.join(name, 'gamma_sweep.csv'))
        assert(list(rows[0]) == ['gamma', 'attribute', 'pair', 'D'])
        assert(len(rows) == 2 * 8)
        assert({row['gamma'] for row in rows} == {'3', '6'})

        assert(pipeline.main(['run', '--out', name, '--model', 'linear', '--save-images']) == 0)
        images = os.listdir(os.path.join(name, 'images'))
        assert(len(images) == 17)
        assert('linear_condition_00.ppm' in images)

    def test_curves_and_stages(self):
        name = out_dir('stages')
        assert(pipeline.main(['curves', '--out', name]) == 1)
        assert(pipeline.main(['generate', '--out', name]) == 0)
        assert(pipeline.main(['curves', '--out', name, '--gamma', '3', '6']) == 0)
        rows = read_rows(os.path.join(name, 'encoding_curves.csv'))
        assert(list(rows[0]) == ['encoder', 'gamma', 'I', 'value'])
        assert(len(rows) == 4 * pipeline.CURVE_POINTS)
        curves = {}
        for row in rows:
            curves.setdefault((row['encoder'], row['gamma']), []).append(float(row['value']))
        assert(list(curves) == [('log', '3'), ('log', '6'), ('nr', ''), ('linear', '')])
        for values in curves.values():
            assert(abs(values[0]) < 1e-6 and abs(values[-1] - 255) < 1e-3)

        assert(pipeline.main(['run', '--out', name, '--model', 'nr', '--model', 'gw',
                              '--save-stages']) == 0)
        files = os.listdir(os.path.join(name, 'stages'))
        # gray world has no stages
        assert(len(files) == 17 * 4)
        assert({'nr_condition_16_{}'.format(stage) for stage in ('N.ppm', 'F1.ppm', 'F2.ppm', 'X.pfm')}
               <= set(files))
        stage = {key: read_image(os.path.join(name, 'stages', 'nr_condition_05_' + key))
                 for key in ('F1.ppm', 'F2.ppm', 'X.pfm')}
        assert(isinstance(stage['X.pfm'], RetinexOutput))
        img = read_image(os.path.join(name, 'condition_05.pfm'))
        np.testing.assert_allclose(stage['X.pfm'].data, run_model(img, ModelSpec('nr')).data,
                                   atol=1e-3)
        # F1 and F2 are written rounded to the nearest level
        difference = stage['F1.ppm'].data - stage['F2.ppm'].data
        assert(np.max(np.abs(stage['X.pfm'].data - difference)) <= 1 + 1e-3)


class TestLibrary(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.config = RunConfig()
        cls.scene = scenesim.get_scene('cartons', 0)
        cls.conditions = scenesim.enumerate_conditions()
        cls.images = pipeline.simulate_suite(cls.scene, cls.config)

    def test_sample_order(self):
        models = [ModelSpec('log'), ModelSpec('gray_world')]
        samples = pipeline.collect_samples(self.images, self.conditions, self.scene.targets, models)
        keys = [(s.model, s.condition, s.target) for s in samples]
        assert(keys == [(m.label, c.index, t.label) for m in models
                        for c in self.conditions for t in self.scene.targets])
        parallel = pipeline.collect_samples(self.images, self.conditions, self.scene.targets,
                                            models, n_jobs=2)
        assert(parallel == samples)

    def test_gray_world_on_achromatic_scene(self):
        rho = np.full((120, 160, 3), .5)
        rho[:, 80:] = .3
        targets = [scenesim.Target(label, 'gray', t.roi)
                   for label, t in zip(('a', 'b', 'c', 'd'), self.scene.targets)]
        scene = scenesim.ReflectanceScene('gray', rho, targets)
        white = self.conditions[-1]
        img = scenesim.simulate(scene, white)
        samples = pipeline.collect_samples([img], [white], targets, [ModelSpec('gray_world')])
        assert(all(s.s < 1e-6 for s in samples))

    def test_evaluate_requires_known_targets(self):
        targets = [scenesim.Target('x', 'gray', self.scene.targets[0].roi)]
        self.assertRaises(ValueError, pipeline.evaluate_samples, [], targets)

    def test_retinex_beats_linear_and_gray_world(self):
        samples = pipeline.collect_samples(self.images, self.conditions, self.scene.targets,
                                           self.config.models)
        report = pipeline.evaluate_samples(samples, self.scene.targets)
        for model in ('log(gamma=6)', 'nr'):
            for baseline in ('linear', 'gw'):
                for attribute in ('hue', 'theta'):
                    pairs = [pair for column, pair in report.columns if column == attribute]
                    assert(len(pairs) == 4)
                    wins = sum(report.value(model, attribute, pair) >
                               report.value(baseline, attribute, pair) for pair in pairs)
                    assert(wins >= 3), (model, baseline, attribute, wins)


if __name__ == "__main__":
    unittest.main()
