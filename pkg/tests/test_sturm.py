"""Sturm chains, root isolation, and replayable sign certificates."""

import random
from fractions import Fraction

import pytest

from polystab import sturm
from polystab.upoly import UPoly

F = Fraction


def from_roots(roots, lead=1):
    p = UPoly.constant(lead)
    for r in roots:
        p = p * UPoly([-F(r), F(1)])
    return p


def test_sturm_count_half_open():
    p = from_roots([1, 2, 3])
    assert sturm.sturm_count(p, 0, 4) == 3
    assert sturm.sturm_count(p, 1, 3) == 2      # (1, 3] keeps 2 and 3
    assert sturm.sturm_count(p, F(3, 2), F(5, 2)) == 1
    assert sturm.sturm_count(p, 4, 9) == 0
    # multiple roots counted once
    sq = p * p
    assert sturm.sturm_count(sq, 0, 4) == 3


def test_count_all_roots():
    assert sturm.count_all_roots(from_roots([-7, 0, F(1, 3)])) == 3
    assert sturm.count_all_roots(UPoly([F(1), F(0), F(1)])) == 0
    with pytest.raises(sturm.ZeroPolynomial):
        sturm.count_all_roots(UPoly())


def test_isolate_all_roots():
    roots = [F(-3), F(-1, 2), F(2), F(7, 3)]
    p = from_roots(roots)
    boxes = sturm.isolate_all_roots(p)
    assert len(boxes) == len(roots)
    for (lo, hi), r in zip(boxes, roots):
        assert lo <= r <= hi
    # boxes are sorted and disjoint
    for (a, b), (c, d) in zip(boxes, boxes[1:]):
        assert b < c


def test_refine_root():
    p = from_roots([F(5, 7), 3])
    lo, hi = sturm.refine_root(p, 0, 1, bits=80)
    assert lo <= F(5, 7) <= hi
    assert hi - lo <= F(1, 2 ** 80)


def test_smallest_positive_root():
    p = from_roots([-2, F(1, 3), 5])
    got = sturm.smallest_positive_root(p, bits=64)
    assert got is not None
    lo, hi = got
    assert lo <= F(1, 3) <= hi and hi - lo <= F(1, 2 ** 64)
    assert sturm.smallest_positive_root(from_roots([-1, -4])) is None


def test_certify_sign_open_positive():
    p = from_roots([0, 1]) + F(1, 2)    # x^2 - x + 1/2, no real roots
    cert = sturm.certify_sign_open(p, -5, 5)
    assert cert.sign == 1
    assert cert.verify()
    neg = sturm.certify_sign_open(-p, -5, 5)
    assert neg.sign == -1


def test_certify_sign_open_endpoint_roots_excused():
    p = from_roots([0, 1], lead=-1)     # -x(x-1) > 0 strictly inside (0, 1)
    cert = sturm.certify_sign_open(p, 0, 1)
    assert cert.sign == 1
    assert 0 < cert.shrunk_a and cert.shrunk_b < 1


def test_certify_sign_open_interior_root_rejected():
    p = from_roots([F(1, 2)])
    with pytest.raises(sturm.SignViolation) as err:
        sturm.certify_sign_open(p, 0, 1)
    lo, hi = err.value.isolating
    assert lo <= F(1, 2) <= hi


def test_certify_sign_open_midpoint_root():
    p = from_roots([F(1, 2)]) ** 2      # vanishes exactly at the midpoint
    with pytest.raises(sturm.SignViolation):
        sturm.certify_sign_open(p, 0, 1)


def test_certify_positive_ray():
    p = from_roots([-3, 1, 2])          # positive beyond 2
    cert = sturm.certify_positive_ray(p, F(5, 2))
    assert cert.sign == 1
    with pytest.raises(sturm.SignViolation):
        sturm.certify_positive_ray(p, F(3, 2))   # root at 2 on the ray
    with pytest.raises(sturm.SignViolation):
        sturm.certify_positive_ray(-p, 10)       # negative leading coeff


def test_certificate_json_roundtrip():
    p = UPoly([F(3), F(0), F(1)])
    cert = sturm.certify_sign_open(p, -2, 2)
    again = sturm.SignCertificate.from_json(cert.to_json())
    assert again.int_coeffs == cert.int_coeffs
    assert again.a == cert.a and again.b == cert.b
    assert again.sign == cert.sign
    assert again.verify()


def test_certificate_verify_catches_tampering():
    cert = sturm.certify_sign_open(UPoly([F(3), F(0), F(1)]), -2, 2)
    doc = cert.to_json()
    doc["sign"] = -cert.sign
    assert not sturm.SignCertificate.from_json(doc).verify()


def test_randomized_against_distinct_roots():
    rng = random.Random(9)
    for _ in range(25):
        roots = sorted({F(rng.randrange(-40, 40), rng.randrange(1, 9))
                        for _ in range(rng.randrange(1, 5))})
        p = from_roots(roots, lead=rng.choice([1, -1, F(2, 3)]))
        assert sturm.count_all_roots(p) == len(roots)
        boxes = sturm.isolate_all_roots(p)
        assert len(boxes) == len(roots)
        for (lo, hi), r in zip(boxes, roots):
            assert lo <= r <= hi
