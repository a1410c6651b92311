import pytest

import philab


def test_algebras():
    a = philab.algebra("A")
    assert a.vertex_count == 4
    assert a.dimension == 9
    assert philab.algebra("A3CT").dimension == 6
    with pytest.raises(philab.ParseError):
        philab.algebra("no/such/file.quiver")


def test_modules_and_syzygies():
    a = philab.algebra("A")
    s2 = philab.simple(a, 2)
    assert s2.dims == [0, 1, 0, 0]
    assert philab.projective(a, 3).dims == [1, 0, 1, 0]
    assert philab.is_isomorphic(philab.syzygy(s2), philab.module(a, "S3+S4"))
    assert philab.syzygy(philab.projective(a, 1)).is_zero()
    assert philab.hom_dim(philab.projective(a, 3), philab.simple(a, 3)) == 1
    parts = philab.decompose(philab.module(a, "S3^2 + P1"))
    assert sorted(m for _, m in parts) == [1, 2]
    with pytest.raises(IndexError):
        philab.simple(a, 5)
    with pytest.raises(philab.ParseError):
        philab.module(a, "S7")


def test_json_round_trip():
    a = philab.algebra("A")
    m = philab.module(a, "P2 + S1")
    back = philab.module_from_json(m.to_json(), a)
    assert back.dims == m.dims
    assert philab.is_isomorphic(back, m)


def test_phi_psi_pd():
    a = philab.algebra("A")
    r = philab.phi(philab.module(a, "S3+S4"))
    assert r["value"] == 1
    assert r["ranks"][:2] == [2, 1]
    assert philab.psi(philab.module(a, "S3+S4"))["psi"] == 1
    assert philab.projective_dimension(philab.simple(a, 3)) == "inf"
    assert philab.projective_dimension(philab.projective(a, 1)) == "0"
    c = philab.algebra("A3CT")
    reg = philab.ClassRegistry(c)
    for v in (1, 2, 3):
        assert philab.phi(philab.simple(c, v), reg)["value"] == 0


def test_resolutions():
    x1 = philab.family("X1")
    assert x1.length == 6
    assert x1.render().startswith("-1: S3\n 0: P3\n")
    assert len(x1.iterate_syzygy(3)) == 2
    assert x1.criterion_holds()
    omega = x1.syzygy()
    assert philab.periodic_iso(omega.wrap(), x1.wrap().syzygy())
    a = philab.algebra("A")
    z = philab.resolution(philab.simple(a, 3), 3, [{"step": 3, "peel": [{"class": "S3", "mult": 1}]}])
    assert z.render() == philab.family("Z0^3").render()
    with pytest.raises(philab.InvalidPlan):
        philab.resolution(philab.simple(a, 2), 3, [{"step": 1, "peel": [{"class": "S3"}, {"class": "S4"}]}])


def test_counterexample():
    assert philab.verify_small_syzygy(1)
    assert philab.verify_big_syzygy(1)
    assert philab.verify_big_syzygy(2, stated=False)
    r = philab.verify_main(1, exact_phi=True)
    assert r["passed"]
    assert r["phi_lower_bound"]["bound"] == 3
    assert r["exact_phi"]["value"] == 4


def test_prime():
    assert philab.prime() == 2**31 - 1
    philab.set_prime(101)
    try:
        a = philab.algebra("A")
        assert philab.phi(philab.module(a, "S3+S4"))["value"] == 1
    finally:
        philab.set_prime(2**31 - 1)
