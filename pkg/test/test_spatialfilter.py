# -*- coding: utf-8 -*-
import unittest

import numpy as np
from retinextoolbox import spatialfilter
from retinextoolbox.imagecore import EncodedImage, RetinexOutput
from retinextoolbox.spatialfilter import GaussianSpec

SIGMA1, SIGMA2 = spatialfilter.DEFAULT_SIGMAS
rng = np.random.RandomState(12)


def dense_gaussian(data, sigma):
    """Brute-force 2-D correlation with replicated borders."""
    radius = int(np.ceil(3 * sigma))
    x = np.arange(-radius, radius + 1)
    weights = np.exp(-(x[:, None] ** 2 + x[None, :] ** 2) / (2. * sigma ** 2))
    weights /= weights.sum()
    padded = np.pad(data, ((radius, radius), (radius, radius), (0, 0)), mode='edge')
    out = np.zeros(data.shape)
    for dy in range(2 * radius + 1):
        for dx in range(2 * radius + 1):
            out += weights[dy, dx] * padded[dy:dy + data.shape[0], dx:dx + data.shape[1]]
    return out


class TestGaussian(unittest.TestCase):

    def test_kernel(self):
        spec = GaussianSpec(SIGMA1)
        assert(spec.radius == 4)
        kernel = spec.kernel()
        assert(kernel.size == 9)
        self.assertAlmostEqual(kernel.sum(), 1)
        np.testing.assert_allclose(kernel, kernel[::-1])
        self.assertRaises(ValueError, GaussianSpec, 0)
        self.assertRaises(ValueError, GaussianSpec, 2, radius=3)
        assert(GaussianSpec(2, radius=10).kernel().size == 21)

    def test_constant(self):
        img = EncodedImage(np.full((30, 40, 3), 77.))
        np.testing.assert_allclose(spatialfilter.gaussian_filter(img, SIGMA2).data, 77.)

    def test_impulse(self):
        data = np.zeros((41, 41, 3))
        data[20, 20] = 1
        out = spatialfilter.gaussian_filter(EncodedImage(data), 3.).data[..., 0]
        kernel = GaussianSpec(3.).kernel()
        assert(abs(out.sum() - 1) < 1e-9)
        np.testing.assert_allclose(out[11:30, 11:30], np.outer(kernel, kernel), atol=1e-12)

    def test_step_edge(self):
        data = np.zeros((20, 24, 3))
        data[:, 12:] = 200
        out = spatialfilter.gaussian_filter(EncodedImage(data), SIGMA1).data
        np.testing.assert_allclose(out, dense_gaussian(data, SIGMA1), atol=1e-6)

    def test_keeps_container(self):
        out = spatialfilter.gaussian_filter(RetinexOutput(-np.ones((5, 5, 3))), GaussianSpec(1.))
        assert(isinstance(out, RetinexOutput))


class TestHdc(unittest.TestCase):

    def test_levels(self):
        assert(spatialfilter.pyramid_levels(1.057) == 0)
        assert(spatialfilter.pyramid_levels(4) == 1)
        assert(spatialfilter.pyramid_levels(SIGMA2) == 3)

    def test_constant(self):
        img = EncodedImage(np.full((120, 160, 3), 93.))
        np.testing.assert_allclose(spatialfilter.hdc_gaussian(img, SIGMA2).data, 93., atol=1e-9)

    def test_fidelity(self):
        for _ in range(20):
            img = EncodedImage(rng.uniform(0, 255, (120, 160, 3)))
            direct = spatialfilter.gaussian_filter(img, SIGMA2).data
            fast = spatialfilter.hdc_gaussian(img, SIGMA2).data
            assert(np.max(np.abs(direct - fast)) <= 2.)

    def test_mirror_within_tolerance(self):
        # the decimation grid is not centred, so symmetry only holds approximately
        data = rng.uniform(0, 255, (120, 160, 3))
        fast = spatialfilter.hdc_gaussian(EncodedImage(data), SIGMA2).data
        fast_mirror = spatialfilter.hdc_gaussian(EncodedImage(data[:, ::-1]), SIGMA2).data
        direct = spatialfilter.gaussian_filter(EncodedImage(data), SIGMA2).data
        assert(np.max(np.abs(fast - direct)) <= 2.)
        assert(np.max(np.abs(fast_mirror - direct[:, ::-1])) <= 2.)
        assert(np.max(np.abs(fast_mirror - fast[:, ::-1])) <= 4.)

    def test_fallback(self):
        img = EncodedImage(rng.uniform(0, 255, (4, 4, 3)))
        np.testing.assert_array_equal(spatialfilter.hdc_gaussian(img, SIGMA2).data,
                                      spatialfilter.gaussian_filter(img, SIGMA2).data)
        self.assertRaises(ValueError, spatialfilter.hdc_gaussian, img, .5)


class TestDog(unittest.TestCase):

    def test_constant(self):
        for path in spatialfilter.FILTER_PATHS:
            X = spatialfilter.dog(EncodedImage(np.full((120, 160, 3), 200.)), filter_path=path)
            assert(isinstance(X, RetinexOutput))
            assert(np.max(np.abs(X.data)) < 1e-9)

    def test_interior_mean(self):
        for _ in range(5):
            img = EncodedImage(rng.uniform(96, 160, (300, 300, 3)))
            X = spatialfilter.dog(img).data
            margin = int(np.ceil(3 * SIGMA2))
            assert(abs(X[margin:-margin, margin:-margin].mean()) < .5)

    def test_linearity(self):
        data = rng.uniform(0, 100, (120, 160, 3))
        for path in spatialfilter.FILTER_PATHS:
            X = spatialfilter.dog(EncodedImage(data), filter_path=path).data
            X_affine = spatialfilter.dog(EncodedImage(2 * data + 30), filter_path=path).data
            np.testing.assert_allclose(X_affine, 2 * X, atol=1e-9)

    def test_mirror_symmetry(self):
        data = rng.uniform(0, 255, (120, 160, 3))
        X = spatialfilter.dog(EncodedImage(data)).data
        X_mirror = spatialfilter.dog(EncodedImage(data[:, ::-1])).data
        np.testing.assert_allclose(X_mirror, X[:, ::-1], atol=1e-9)

    def test_stages(self):
        img = EncodedImage(rng.uniform(0, 255, (30, 30, 3)))
        stages = spatialfilter.dog_stages(img, 1., 5.)
        np.testing.assert_allclose(stages['X'].data, stages['F1'].data - stages['F2'].data)
        self.assertRaises(ValueError, spatialfilter.dog, img, 5., 1.)
        self.assertRaises(ValueError, spatialfilter.dog, img, 1., 5., 'fft')


if __name__ == "__main__":
    unittest.main()
