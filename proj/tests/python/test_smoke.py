import math

import numpy as np
import pytest

import csrbf


def test_min_support_table():
    got = {f.name: csrbf.min_support(f, 1.0) for f in csrbf.named_families()}
    assert got["wendland"] == pytest.approx(2.98, abs=0.01)
    assert got["wu"] == pytest.approx(2.80, abs=0.01)
    assert got["gneiting-7-2"] == pytest.approx(5.09, abs=0.01)
    assert got["gneiting-5"] == pytest.approx(6.26, abs=0.01)
    b = csrbf.support_bound(csrbf.KernelFamily.gneiting_five())
    assert b.r_star_over_c == pytest.approx((19 - math.sqrt(145)) / 54, abs=1e-12)
    with pytest.raises(ValueError):
        csrbf.min_support(csrbf.KernelFamily.wendland(), 0.0)


def test_kernel_is_vectorised():
    k = csrbf.Kernel(csrbf.KernelFamily.parse("wendland"), 2.0)
    r = np.array([0.0, 1.0, 2.0, 3.0])
    np.testing.assert_allclose(k.value(r), [1.0, 0.1875, 0.0, 0.0], atol=1e-15)
    assert k.deriv(0.5) < 0.0
    assert csrbf.KernelFamily.parse("gneiting", 6.0).name == "gneiting-6"


def test_fit_interpolates_and_det_field():
    src = np.array([[0.5, 0.5]])
    dst = np.array([[0.6, 0.7]])
    t = csrbf.fit(csrbf.Kernel(csrbf.KernelFamily.gneiting_seven_halves(), 1.02), src, dst)
    np.testing.assert_allclose(t.evaluate(src), dst, atol=1e-14)
    assert t.jacobian(src).shape == (1, 2, 2)
    field = csrbf.det_field(t, (0.0, 0.0, 1.0, 1.0), 200, 100)
    assert field.values.shape == (100, 200)
    assert field.min_det > 0.0
    assert field.min_det == field.values.min()

    folded = csrbf.fit(csrbf.Kernel(csrbf.KernelFamily.gneiting_seven_halves(), 0.15), src, dst)
    assert csrbf.det_field(folded, (0.0, 0.0, 1.0, 1.0), 200, 200).min_det < 0.0


def test_conditioning_error():
    src = np.array([[0.3, 0.3], [0.5, 0.5], [0.5, 0.5 + 1e-10]])
    dst = np.array([[0.3, 0.3], [0.6, 0.5], [0.5, 0.6]])
    with pytest.raises(csrbf.ConditioningError):
        csrbf.fit(csrbf.Kernel(csrbf.KernelFamily.gneiting_seven_halves(), 1.0), src, dst)
    with pytest.raises(csrbf.InputError):
        csrbf.fit(csrbf.Kernel(csrbf.KernelFamily.wu(), 1.0), src[:2], dst)


def test_four_landmark_closed_form():
    k = csrbf.Kernel(csrbf.KernelFamily.wu(), 50.0)
    c1, c2 = csrbf.rhombus_coefficients(k, 0.2)
    assert c1 == [0.0, 0.0, 0.0, 0.0]
    assert c2[1] == c2[3]
    assert csrbf.axis_det(k, 0.2, 2.0) > 0.0
    assert csrbf.asymptotic_axis_det(0.0, 2.0) == 1.0
    rows = csrbf.figure2_table(csrbf.named_families(), 100.0, 0.2, csrbf.axis_samples(5, 5.0))
    assert len(rows) == 20
    assert rows[0][1] == "wendland"


def test_warp_identity_and_brain(tmp_path):
    img = csrbf.synthetic_brain_image()
    assert img.shape == (128, 128) and img.dtype == np.uint8
    src, dst = csrbf.synthetic_brain_landmarks()
    k = csrbf.Kernel(csrbf.KernelFamily.gneiting_seven_halves(), 20.0)
    np.testing.assert_array_equal(csrbf.warp_image(k, src, src, img), img)
    warped = csrbf.warp_image(k, src, dst, img)
    assert warped.shape == img.shape
    assert (warped != img).any()

    path = str(tmp_path / "w.pgm")
    csrbf.write_pnm(path, warped)
    np.testing.assert_array_equal(csrbf.read_pnm(path), warped)

    rgb = np.stack([img, img // 2, 255 - img], axis=-1)
    assert csrbf.warp_image(k, src, dst, rgb).shape == (128, 128, 3)


def test_svg():
    src = np.array([[0.5, 0.5]])
    dst = np.array([[0.6, 0.7]])
    t = csrbf.fit(csrbf.Kernel(csrbf.KernelFamily.wendland(), 0.6), src, dst)
    svg = csrbf.deform_grid_svg(t, src, dst)
    assert svg.startswith("<?xml")
    assert svg.count("<polyline") == 22
    assert svg == csrbf.deform_grid_svg(t, src, dst)
