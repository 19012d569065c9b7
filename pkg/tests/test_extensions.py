import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shukla import extensions as ext
from shukla.cochains import Cochain
from shukla.library import builtin, random_invertible, random_triple
from shukla.linalg import vec_add
from shukla.scalars import QQ, Fp

fields = st.sampled_from([QQ, Fp(2), Fp(3), Fp(5)])


def _context(field, seed, max_dim=2):
    rng = random.Random(seed)
    return rng, ext.ExtContext(*random_triple(rng, field, max_dim))


def _dual(field=QQ):
    b = builtin("dual_numbers", field)
    return ext.ExtContext(b.A, b.R, b.M)


@given(fields, st.integers(0, 10**6))
@settings(max_examples=15)
def test_explicit_differentials_equal_total_complex(field, seed):
    _, ec = _context(field, seed)
    for n in (1, 2, 3):
        assert ext.explicit_differential(ec, n).matrix == ec.tc.D[n]


@given(fields, st.integers(0, 10**6))
@settings(max_examples=15)
def test_coboundaries_are_recognised(field, seed):
    rng, ec = _context(field, seed)
    dr, dm = ec.dims[1], ec.dims[2]
    h = Cochain((0, 1), ec.dims, field, {k: rng.randint(-3, 3) for k in range(dr * dm)})
    z = ext.coboundary2(ec, h)
    assert ext.check_z2(z, ec).ok
    w = ext.is_coboundary2(z, ec)
    assert w is not None
    assert ext.coboundary2(ec, w).vector(ec) == z.vector(ec)


@given(fields, st.integers(0, 10**6))
@settings(max_examples=10)
def test_degree_three_coboundaries(field, seed):
    rng, ec = _context(field, seed)
    size = ec.block_dim(0, 2), ec.block_dim(1, 1)
    m = Cochain((0, 2), ec.dims, field, {k: rng.randint(-2, 2) for k in range(size[0])})
    n = Cochain((1, 1), ec.dims, field, {k: rng.randint(-2, 2) for k in range(size[1])})
    t = ext.coboundary3(ec, m, n)
    assert ext.check_z3(t, ec).ok
    assert ext.is_coboundary3(t, ec) is not None


def test_violations_name_the_identity():
    ec = _dual()
    z = ext.TwoCocycleDatum.from_vector(ec, {ec.block_dim(0, 2): 1})  # g(1, 1) = 1 only
    v = ext.check_z2(z, ec)
    assert not v.ok
    assert any("g(" in name for name, *_ in v.violations)
    with pytest.raises(ext.NotACocycle):
        ext.build_extension(z, ec)


@given(fields, st.integers(0, 10**6))
@settings(max_examples=10)
def test_build_extract_roundtrip(field, seed):
    rng, ec = _context(field, seed)
    z = ext.random_cocycle2(ec, rng)
    e = ext.build_extension(z, ec)
    assert e.validate().ok
    e2 = e.transformed(random_invertible(rng, field, e.S.dim))
    assert e2.validate().ok
    for rule in ("first", "last"):
        back = ext.extract_cocycle2(e2, ec, rule=rule)
        diff = ext.TwoCocycleDatum.from_vector(ec, vec_add(back.vector(ec), z.vector(ec), field, -1))
        assert ext.is_coboundary2(diff, ec) is not None
    assert ext.extension_equivalence(e, e2) is not None


def test_inequivalent_extensions():
    ec = _dual()
    zs = [ext.TwoCocycleDatum.from_vector(ec, v) for v in ext.cocycles(ec, 2)]
    z = next(z for z in zs if ext.is_coboundary2(z, ec) is None)
    split = ext.build_extension(ext.TwoCocycleDatum.zero(ec), ec)
    assert ext.extension_equivalence(ext.build_extension(z, ec), split) is None


def test_crossed_extensions():
    ec = _dual()
    triv = ext.trivial_crossed_extension(ec)
    assert triv.validate().ok
    assert ext.is_coboundary3(ext.crossed_to_cocycle(triv, ec), ec) is not None
    dn = ext.dual_numbers_crossed(ec)
    assert dn.validate().ok
    t1 = ext.crossed_to_cocycle(dn, ec, rule="first")
    t2 = ext.crossed_to_cocycle(dn, ec, rule="last")
    assert ext.check_z3(t1, ec).ok and ext.is_coboundary3(t1, ec) is None
    diff = ext.ThreeCocycleDatum.from_vector(ec, vec_add(t1.vector(ec), t2.vector(ec), ec.field, -1))
    assert ext.is_coboundary3(diff, ec) is not None


@pytest.mark.parametrize("field", [QQ, Fp(2), Fp(3)], ids=str)
def test_dual_numbers_crossed_class_survives_every_field(field):
    ec = _dual(field)
    t = ext.crossed_to_cocycle(ext.dual_numbers_crossed(ec), ec)
    assert ext.is_coboundary3(t, ec) is None
    assert ext.h_dim(ec, 3) == 1


def test_json_roundtrips():
    ec = _dual()
    rng = random.Random(3)
    z = ext.random_cocycle2(ec, rng)
    assert ext.TwoCocycleDatum.from_json(json.loads(json.dumps(z.to_json()))).vector(ec) == z.vector(ec)
    e = ext.build_extension(z, ec)
    e2 = ext.extension_from_json(json.loads(json.dumps(e.to_json())), ec)
    assert ext.extension_equivalence(e, e2) is not None
    ce = ext.dual_numbers_crossed(ec)
    ce2 = ext.crossed_from_json(json.loads(json.dumps(ce.to_json())), ec)
    assert ext.crossed_to_cocycle(ce2, ec).vector(ec) == ext.crossed_to_cocycle(ce, ec).vector(ec)


def test_classification_small():
    ec = _dual(Fp(2))
    c = ext.classify_bruteforce(ec)
    assert (c.z2, c.b2, c.classes) == (4, 2, 2)
    with pytest.raises(ValueError):
        ext.classify_bruteforce(_dual(QQ))
    with pytest.raises(ext.SearchSpaceTooLarge):
        ext.classify_bruteforce(ec, limit=4)
