import math

import mpmath as mp
import numpy as np
import pytest

from chebbias.explicit import (
    CHI4_TABLE,
    DATA_ENV,
    ZETA_TABLE,
    ZeroTable,
    ZeroTableError,
    bundled,
    explicit_delta,
    main_term,
    variance,
)


def test_parse_label_and_comments():
    t = ZeroTable.parse("# header\nlabel: demo\n\n14.13\n# mid\n21.02\n")
    assert t.label == "demo" and t.gammas == (14.13, 21.02)


def test_parse_default_label():
    assert ZeroTable.parse("1.5\n2.5").label == "unlabelled"


def test_parse_rejects_decreasing_with_line():
    with pytest.raises(ZeroTableError) as e:
        ZeroTable.parse("# c\n14.1\n21.0\n20.0\n")
    assert e.value.line == 4 and "line 4" in str(e.value)


@pytest.mark.parametrize("bad,line", [("14.1\nabc\n", 2), ("-3\n", 1), ("1\n1\n", 2), ("nan\n", 1)])
def test_parse_rejects(bad, line):
    with pytest.raises(ZeroTableError) as e:
        ZeroTable.parse(bad)
    assert e.value.line == line


def test_direct_construction_validates():
    with pytest.raises(ZeroTableError):
        ZeroTable("x", (2.0, 1.0))


def test_bundled_zeta():
    z = bundled(ZETA_TABLE)
    assert len(z) == 100 and z.label == "zeta"
    for k in (1, 2, 50, 100):
        assert z.gammas[k - 1] == pytest.approx(float(mp.zetazero(k).imag), abs=1e-11)


def test_bundled_chi4():
    z = bundled(CHI4_TABLE)
    assert len(z) == 100
    assert z.gammas[0] == pytest.approx(6.0209489046976, abs=1e-12)
    # L(1/2 + i gamma, chi_-4) vanishes at the tabulated ordinates
    chi = [0, 1, 0, -1]
    for g in (z.gammas[0], z.gammas[49]):
        val = mp.dirichlet(mp.mpc(0.5, g), chi)
        assert abs(val) < 1e-9


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / ZETA_TABLE).write_text("label: mine\n3.0\n4.0\n")
    monkeypatch.setenv(DATA_ENV, str(tmp_path))
    z = bundled()
    assert z.label == "mine" and z.gammas == (3.0, 4.0)


def test_load_uses_stem_as_label(tmp_path):
    p = tmp_path / "custom.txt"
    p.write_text("5.0\n")
    assert ZeroTable.load(p).label == "custom"


def test_variance_single_zero():
    t = ZeroTable("one", (14.134725141734695,))
    assert variance(t) == pytest.approx(2 / (0.25 + 14.134725141734695**2), rel=1e-15)
    assert variance(t) == pytest.approx(0.0100, abs=1e-4)


def test_variance_monotone_in_prefix():
    z = bundled()
    vs = [variance(z.prefix(n)) for n in range(1, 101)]
    assert all(b > a for a, b in zip(vs, vs[1:]))
    assert 0.038 <= vs[-1] <= 0.046


def test_variance_chi4_below_full_value():
    assert 0.12 < variance(bundled(CHI4_TABLE)) < 0.155


def test_variance_empty():
    with pytest.raises(ValueError):
        variance(ZeroTable("e", ()))


def test_explicit_single_zero():
    g = 14.134725141734695
    t = ZeroTable("one", (g,))
    x = 1234.5
    alpha = math.atan(1 / (2 * g))
    expected = math.sqrt(x) / math.log(x) * (1 + 2 * math.sin(g * math.log(x) + alpha) / math.sqrt(0.25 + g * g))
    assert explicit_delta(x, t) == pytest.approx(expected, rel=1e-13)


def test_explicit_terms_zero_is_main_term():
    z = bundled()
    xs = np.geomspace(10, 1e7, 50)
    assert np.array_equal(explicit_delta(xs, z, terms=0), main_term(xs))
    assert explicit_delta(100.0, z, terms=0) == main_term(100.0)


def test_explicit_terms_truncates():
    z = bundled()
    assert explicit_delta(5e5, z, terms=10) == pytest.approx(explicit_delta(5e5, z.prefix(10)), rel=1e-14)


def test_explicit_array_shape():
    out = explicit_delta(np.array([[10.0, 100.0], [1e3, 1e4]]), bundled())
    assert out.shape == (2, 2)
    assert isinstance(explicit_delta(10.0, bundled()), float)


def test_explicit_errors():
    with pytest.raises(ValueError):
        explicit_delta(100.0, ZeroTable("e", ()))
    with pytest.raises(ValueError):
        explicit_delta(1.5, bundled())
