import json
import math

import numpy as np
import pytest

import gstf


@pytest.fixture(scope="module")
def grid():
    return gstf.build_grid(12.0, 10)


def test_grid_and_sampling(grid):
    assert grid.count == 1024
    x = grid.coordinates()
    assert x[0] == pytest.approx(-12.0)
    assert x[-1] == pytest.approx(12.0)
    f = gstf.sample("gaussian(1)", grid)
    assert np.allclose(f.values.real, np.exp(-x**2 / 2), atol=1e-15)
    assert gstf.parse("hermite(3)*gaussian(2) + 0.5*bump()") == "hermite(3)*gaussian(2) + 0.5*bump()"


def test_dft_of_gaussian_is_gaussian(grid):
    f = gstf.sample("gaussian(1)", grid)
    F = gstf.dft(f)
    xi = F.grid.coordinates()
    assert np.max(np.abs(F.values - np.exp(-xi**2 / 2))) < 1e-12
    back = gstf.idft(F)
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_stft_closed_form(grid):
    g = gstf.sample("gaussian(1)", grid)
    tf = gstf.default_tfgrid(grid)
    V = gstf.stft(g, g, tf).values
    x = tf.x.coordinates()[:, None]
    xi = tf.xi.coordinates()[None, :]
    assert np.max(np.abs(np.abs(V) - np.exp(-(x**2 + xi**2) / 4) / math.sqrt(2))) < 1e-6


def test_classification(grid):
    g = gstf.sample("gaussian(1)", grid)
    rep = gstf.classify_function(g, gstf.GSIndex.decay(0.5))
    assert rep.verdict == gstf.Verdict.Member
    assert abs(rep.r_fit - 0.5) < 1e-9
    beurling = gstf.classify_function(g, gstf.GSIndex.decay(0.5, gstf.Regularity.Beurling))
    assert beurling.verdict == gstf.Verdict.NotMember
    assert abs(gstf.fit_decay_rate(gstf.sample("subexp(1, 2)", grid), 1.0).rate - 2.0) < 1e-9

    x = grid.coordinates()
    lorentz = gstf.SampledFunction(grid, 1.0 / (1.0 + x**2))
    assert gstf.classify_function(lorentz, gstf.GSIndex.decay(0.5)).verdict == gstf.Verdict.NotMember


def test_witnesses():
    w = gstf.make_witness(gstf.GSIndex(0.6, 0.6, gstf.Regularity.Beurling))
    assert w.construction == "gaussian(1)"
    assert gstf.check_witness(w, gstf.GSIndex(0.6, 0.6, gstf.Regularity.Beurling)).passed
    with pytest.raises(gstf.GstfError) as err:
        gstf.make_witness(gstf.GSIndex(0.3, 0.7, gstf.Regularity.Beurling))
    assert err.value.kind == "TrivialSpace"
    assert gstf.boundary_triviality_demo(0.5).passing == 0


def test_toeplitz_identity(grid):
    tf = gstf.default_tfgrid(grid)
    g = gstf.sample("gaussian(1)", grid)
    w = gstf.SampledFunction(grid, g.values / g.l2_norm())
    f = gstf.sample("hermite(2)", grid)
    out = gstf.apply_toeplitz(gstf.constant_symbol(tf), w, w, f)
    assert np.max(np.abs(out.values - f.values)) / f.sup_abs() < 1e-5


def test_parser_errors_carry_kind_and_offset():
    with pytest.raises(gstf.GstfError) as err:
        gstf.parse("gaussian(")
    assert err.value.kind == "UnbalancedParen"
    assert err.value.offset == 9


def test_cli_round_trip():
    code, out, err = gstf.run_cli(["classify", "--expr", "gaussian(1)", "--s", "0.5"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["verdict"] == "Member"
    code, _, err = gstf.run_cli(["witness", "--s", "0.3", "--sigma", "0.7", "--type", "beurling"])
    assert code == 2
    assert "TrivialSpace" in err


def test_inequalities():
    assert gstf.peetre_bound_holds(3.0, -2.0, 4)
    assert gstf.subexp_triangle_holds(1.5, -0.5, 0.5)
