"""Seeded invariant suite behind ``shukla selftest``."""
from __future__ import annotations

import random
import time

from . import extensions as ext
from .bicomplex import assemble, check_identities, totalize
from .homology import compare, hochschild_over_K, shukla_cohomology
from .library import base_field, builtin, random_invertible, random_lie_triple, random_triple
from .lie import assemble_lie
from .linalg import vec_add
from .scalars import QQ, Fp


def _identities(rng, f, count):
    for _ in range(count):
        A, R, M = random_triple(rng, f, 3)
        bc = assemble(A, R, M, N=4, check=False)
        res = check_identities(bc, raise_on_failure=False)
        if not (res["dd"] and res["vv"] and res["anticommute"]):
            return False, f"failure {res['failures']} on dims {A.dim},{R.dim},{M.dim}"
        totalize(bc)
        cv = compare(A, R, M, N=4)
        e0, e1, e2 = cv.entry(0), cv.entry(1), cv.entry(2)
        if not (e0.iso and e1.iso and e2.injective):
            return False, f"alpha verdicts {[e.verdict() for e in cv.entries]}"
    return True, f"{count} triples over {f}"


def _degeneration(f):
    K = base_field(f)
    for name, params in (("base_field", []), ("trunc_poly", [2])):
        b = builtin(name, f, params)
        rep, _ = shukla_cohomology(K, b.R, b.M, N=4)
        if rep.dims() != hochschild_over_K(b.R, b.M, N=4).dims():
            return False, name
    return True, ""


def _explicit(rng, f, count):
    for _ in range(count):
        A, R, M = random_triple(rng, f, 2)
        ec = ext.ExtContext(A, R, M)
        for n in (2, 3):
            if not (ext.compare_z(ec, n).agree and ext.compare_b(ec, n).agree):
                return False, f"Z/B mismatch in degree {n}"
    return True, ""


def _roundtrip2(rng, f, count):
    for _ in range(count):
        A, R, M = random_triple(rng, f, 2)
        ec = ext.ExtContext(A, R, M)
        z = ext.random_cocycle2(ec, rng)
        e = ext.build_extension(z, ec)
        e = e.transformed(random_invertible(rng, f, e.S.dim))
        back = ext.extract_cocycle2(e, ec)
        diff = ext.TwoCocycleDatum.from_vector(ec, vec_add(back.vector(ec), z.vector(ec), f, -1))
        if ext.is_coboundary2(diff, ec) is None:
            return False, "extracted class differs"
        if ext.extension_equivalence(e, ext.build_extension(back, ec)) is None:
            return False, "no equivalence to the rebuilt extension"
    return True, ""


def _roundtrip3(rng, f, count):
    for _ in range(count):
        A, R, M = random_triple(rng, f, 2)
        ec = ext.ExtContext(A, R, M)
        e = ext.build_extension(ext.random_cocycle2(ec, rng), ec)
        ce = ext.crossed_from_extension(e, ec)
        ce = ce.transformed(random_invertible(rng, f, ce.C0.dim), random_invertible(rng, f, ce.C1.dim))
        t1 = ext.crossed_to_cocycle(ce, ec, rule="first")
        t2 = ext.crossed_to_cocycle(ce, ec, rule="last")
        if ext.is_coboundary3(t1, ec) is None:
            return False, "class of a crossed extension built from an abelian one is nonzero"
        diff = ext.ThreeCocycleDatum.from_vector(ec, vec_add(t1.vector(ec), t2.vector(ec), f, -1))
        if ext.is_coboundary3(diff, ec) is None:
            return False, "class depends on the section"
    return True, ""


def _lie(rng, f, count):
    for _ in range(count):
        A, L, M = random_lie_triple(rng, f, 3)
        assemble_lie(A, L, M, N=4)
    return True, f"{count} triples over {f}"


def run_selftest(seed: int = 0, field=None):
    """List of (name, passed, detail). ``field`` restricts the suite to one field."""
    fields = [field] if field is not None else [QQ, Fp(5)]
    checks = []
    for f in fields:
        checks += [
            (f"bicomplex identities and alpha verdicts [{f}]", lambda r, f=f: _identities(r, f, 10)),
            (f"A = K degeneration [{f}]", lambda r, f=f: _degeneration(f)),
            (f"explicit Z/B in degrees 2, 3 [{f}]", lambda r, f=f: _explicit(r, f, 4)),
            (f"degree-2 roundtrip [{f}]", lambda r, f=f: _roundtrip2(r, f, 4)),
            (f"degree-3 section independence [{f}]", lambda r, f=f: _roundtrip3(r, f, 3)),
            (f"Lie bicomplex identities [{f}]", lambda r, f=f: _lie(r, f, 8)),
        ]
    out = []
    for i, (name, fn) in enumerate(checks):
        rng = random.Random(seed * 1000 + i)
        t0 = time.perf_counter()
        try:
            ok, detail = fn(rng)
        except Exception as e:  # noqa: BLE001 - every failure is a FAIL line
            ok, detail = False, f"{type(e).__name__}: {e}"
        detail = (detail + "; " if detail else "") + f"{time.perf_counter() - t0:.1f}s"
        out.append((name, ok, detail))
    return out
