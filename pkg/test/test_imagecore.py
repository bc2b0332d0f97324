# -*- coding: utf-8 -*-
import os
import tempfile
import unittest

import numpy as np
from retinextoolbox import imagecore
from retinextoolbox.imagecore import EncodedImage, LinearImage, RetinexOutput, Roi

tmp_dir = tempfile.mkdtemp()


def write_bytes(name, raw):
    path = os.path.join(tmp_dir, name)
    with open(path, 'wb') as f:
        f.write(raw)
    return path


class TestContainers(unittest.TestCase):

    def test_linear_image(self):
        img = LinearImage(np.ones((2, 3, 3)))
        assert(img.width == 3 and img.height == 2 and img.channels == 3)
        self.assertRaises(ValueError, LinearImage, -np.ones((2, 3, 3)))
        self.assertRaises(ValueError, LinearImage, np.ones((2, 3)))
        self.assertRaises(ValueError, LinearImage, np.ones((0, 3, 3)))
        self.assertRaises(ValueError, LinearImage, np.full((1, 1, 3), np.nan))

    def test_read_only(self):
        img = EncodedImage(np.zeros((2, 2, 3)))
        with self.assertRaises(ValueError):
            img.data[0, 0, 0] = 1

    def test_encoded_range(self):
        self.assertRaises(ValueError, EncodedImage, np.full((1, 1, 3), 256.))
        img = EncodedImage(np.full((1, 1, 3), -20.), check_range=False)
        assert(img.data[0, 0, 0] == -20)

    def test_image_like(self):
        X = RetinexOutput(np.zeros((1, 1, 3)), signed=False)
        new = imagecore.image_like(X, np.ones((1, 1, 3)))
        assert(isinstance(new, RetinexOutput) and new.signed is False)
        new = imagecore.image_like(LinearImage(np.ones((1, 1, 3))), np.zeros((1, 1, 3)))
        assert(isinstance(new, LinearImage))


class TestRoi(unittest.TestCase):

    def test_roi_constant_field(self):
        img = EncodedImage(np.full((5, 6, 3), (10, 20, 30)))
        for roi in [Roi(0, 0, 1, 1), Roi(2, 1, 3, 3), Roi(0, 0, 6, 5)]:
            assert(imagecore.roi_mean(img, roi) == (10., 20., 30.))

    def test_roi_two_pixels(self):
        data = np.zeros((1, 2, 3))
        data[0, 1] = 255
        assert(imagecore.roi_mean(EncodedImage(data), Roi(0, 0, 2, 1)) == (127.5, 127.5, 127.5))

    def test_roi_3x3(self):
        data = np.zeros((5, 5, 3))
        data[1:4, 1:4] = np.arange(27).reshape(3, 3, 3)
        means = imagecore.roi_mean(EncodedImage(data), Roi(1, 1, 3, 3))
        np.testing.assert_allclose(means, np.arange(27).reshape(9, 3).mean(axis=0))

    def test_roi_linearity(self):
        data = np.random.RandomState(5).uniform(0, 4000, (12, 16, 3))
        roi = Roi(3, 2, 7, 5)
        means = np.array(imagecore.roi_mean(LinearImage(data), roi))
        for a in (0., .5, 7.):
            np.testing.assert_allclose(imagecore.roi_mean(LinearImage(a * data), roi), a * means)

    def test_roi_errors(self):
        img = EncodedImage(np.zeros((4, 4, 3)))
        self.assertRaises(imagecore.RoiError, imagecore.roi_mean, img, Roi(2, 2, 3, 3))
        self.assertRaises(imagecore.RoiError, Roi, 0, 0, 0, 1)
        self.assertRaises(imagecore.RoiError, Roi, -1, 0, 1, 1)
        assert(Roi(0, 0, 2, 2).overlaps(Roi(1, 1, 2, 2)))
        assert(not Roi(0, 0, 2, 2).overlaps(Roi(2, 0, 2, 2)))


class TestCodec(unittest.TestCase):

    def test_smallest_ppm(self):
        path = write_bytes('small.ppm', b'P6 2 1 255\n' + bytes([1, 2, 3, 4, 5, 6]))
        img = imagecore.read_image(path)
        assert(isinstance(img, EncodedImage))
        assert(img.width == 2 and img.height == 1)
        np.testing.assert_array_equal(img.data[0, 1], [4, 5, 6])

    def test_ppm_comments(self):
        path = write_bytes('comment.ppm', b'P6\n# made by hand\n1 1\n255\n' + bytes([7, 8, 9]))
        np.testing.assert_array_equal(imagecore.read_image(path).data[0, 0], [7, 8, 9])

    def test_ppm_16_bits(self):
        payload = np.array([0, 1000, 65535], dtype='>u2').tobytes()
        img = imagecore.read_image(write_bytes('deep.ppm', b'P6 1 1 65535\n' + payload))
        assert(isinstance(img, LinearImage))
        np.testing.assert_array_equal(img.data[0, 0], [0, 1000, 65535])

    def test_pfm_identity(self):
        payload = np.full(3, .5, dtype='<f4').tobytes()
        img = imagecore.read_image(write_bytes('half.pfm', b'PF\n1 1\n-1.0\n' + payload))
        assert(isinstance(img, LinearImage))
        np.testing.assert_array_equal(img.data[0, 0], [.5, .5, .5])

    def test_pfm_grayscale_big_endian(self):
        payload = np.array([1., 2.], dtype='>f4').tobytes()
        img = imagecore.read_image(write_bytes('gray.pfm', b'Pf\n1 2\n1.0\n' + payload))
        # bottom row first
        np.testing.assert_array_equal(img.data[:, 0, 0], [2., 1.])
        np.testing.assert_array_equal(img.data[0, 0], [2., 2., 2.])

    def test_truncated(self):
        path = write_bytes('short.ppm', b'P6 2 1 255\n' + bytes(5))
        self.assertRaises(imagecore.TruncatedImageError, imagecore.read_image, path)
        with self.assertRaises(imagecore.TruncatedImageError) as ctx:
            imagecore.read_image(write_bytes('long.ppm', b'P6 2 1 255\n' + bytes(7)))
        # first byte past the declared payload
        assert(ctx.exception.offset == 11 + 6)
        payload = np.full(4, .5, dtype='<f4').tobytes()
        path = write_bytes('long.pfm', b'PF\n1 1\n-1.0\n' + payload)
        self.assertRaises(imagecore.TruncatedImageError, imagecore.read_image, path)

    def test_header_errors(self):
        with self.assertRaises(imagecore.ImageFormatError) as ctx:
            imagecore.read_image(write_bytes('width.ppm', b'P6 x 1 255\n' + bytes(3)))
        assert(ctx.exception.offset == 3)
        with self.assertRaises(imagecore.ImageFormatError) as ctx:
            imagecore.read_image(write_bytes('magic.ppm', b'P3 1 1 255\n0 0 0'))
        assert(ctx.exception.offset == 0)
        with self.assertRaises(imagecore.ImageFormatError):
            imagecore.read_image(write_bytes('header.ppm', b'P6 1 1'))

    def test_encoded_round_trip(self):
        rng = np.random.RandomState(0)
        img = EncodedImage(rng.randint(0, 256, (7, 5, 3)))
        first = os.path.join(tmp_dir, 'first.ppm')
        second = os.path.join(tmp_dir, 'second.ppm')
        imagecore.write_image(img, first)
        back = imagecore.read_image(first)
        np.testing.assert_array_equal(back.data, img.data)
        imagecore.write_image(back, second)
        assert(open(first, 'rb').read() == open(second, 'rb').read())

    def test_linear_round_trip(self):
        rng = np.random.RandomState(1)
        img = LinearImage(rng.uniform(0, 5000, (6, 9, 3)))
        path = os.path.join(tmp_dir, 'linear.pfm')
        imagecore.write_image(img, path)
        back = imagecore.read_image(path)
        assert(isinstance(back, LinearImage))
        np.testing.assert_allclose(back.data, img.data, rtol=2. ** -23)

    def test_signed_round_trip(self):
        X = RetinexOutput(np.array([[[-12.5, 0., 30.25]]]))
        path = os.path.join(tmp_dir, 'signed.pfm')
        imagecore.write_image(X, path)
        back = imagecore.read_image(path)
        assert(isinstance(back, RetinexOutput))
        np.testing.assert_array_equal(back.data, X.data)

    def test_write_errors(self):
        img = EncodedImage(np.zeros((1, 1, 3)))
        self.assertRaises(IOError, imagecore.write_image, img,
                          os.path.join(tmp_dir, 'missing', 'dir', 'img.ppm'))
        self.assertRaises(TypeError, imagecore.write_image, np.zeros((1, 1, 3)),
                          os.path.join(tmp_dir, 'array.ppm'))


if __name__ == "__main__":
    unittest.main()
