"""Discriminant classes: Berlekamp elements, parity law, even-sum test."""

import itertools
import random

import pytest

from hypohff.errors import DomainError
from hypohff.ffield import enumerate_field, is_square, make_field
from hypohff.polyring import (Poly, compose, discriminant, fact_type,
                              is_irreducible, is_separable, monic_polys)
from hypohff.discclass import (berlekamp_element, disc_class_odd,
                               even_sum_criterion, parity_law_check)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)


def P(ctx, *low_to_high):
    return Poly.from_elems(ctx, low_to_high)


def test_berlekamp_examples():
    a, cls = berlekamp_element(P(F2, 1, 1, 1))  # t^2 + t + 1
    assert cls.value == 1
    assert a == a.ctx.one
    a, cls = berlekamp_element(P(F2, 0, 1, 1))  # t(t + 1)
    assert cls.value == 0 and a == a.ctx.zero
    # irreducible cubic: r=1, n=3, parity matches => trivial class
    _, cls = berlekamp_element(P(F2, 1, 1, 0, 1))
    assert cls.value == 0


def test_berlekamp_raw_in_base_field():
    rng = random.Random(2)
    for ctx in (F2, F4):
        tried = 0
        for h in monic_polys(ctx, 3):
            if not is_separable(h):
                continue
            a, cls = berlekamp_element(h)
            # A is Frobenius-fixed, hence in the base field
            assert a ** ctx.q == a
            assert cls.raw.ctx == ctx
            tried += 1
        assert tried > 0


def test_berlekamp_errors():
    with pytest.raises(DomainError):
        berlekamp_element(P(F3, 1, 1, 1))
    with pytest.raises(DomainError):
        berlekamp_element(P(F2, 0, 0, 1))  # inseparable
    with pytest.raises(DomainError):
        berlekamp_element(P(F2, 1, 1))  # degree 1


def test_disc_class_odd_examples():
    assert not disc_class_odd(P(F3, 1, 0, 1))   # disc = -4 = 2, nonsquare mod 3
    assert disc_class_odd(P(F3, 2, 0, 1))       # t^2 - 1 splits, disc = 4 = 1
    # every irreducible cubic has cyclic group inside A_3: disc is a square
    for f in monic_polys(F5, 3):
        if is_irreducible(f):
            assert disc_class_odd(f)


def test_disc_class_odd_shift_invariance():
    rng = random.Random(4)
    cases = 0
    for ctx in (F3, F5, make_field(3, 2)):
        polys = [f for f in monic_polys(ctx, 2) if is_separable(f)]
        polys += [f for f in monic_polys(ctx, 3) if is_separable(f)][:20]
        for f in polys:
            if cases >= 100:
                break
            c = ctx.from_val(rng.randrange(ctx.q))
            shifted = compose(f, Poly.from_elems(ctx, [c, 1]))
            assert disc_class_odd(f) == disc_class_odd(shifted)
            cases += 1
    assert cases == 100


def test_even_degree_irreducible_class_is_frobenius_sign():
    # for irreducible h, Frobenius cycle type is (deg,); its sign is odd
    # exactly for even degree, and the class must be nontrivial then
    for ctx in (F3, F5):
        for n in (2, 3, 4):
            if ctx.q ** n > 700:
                continue
            for h in monic_polys(ctx, n):
                if not is_irreducible(h):
                    continue
                nontrivial = not disc_class_odd(h)
                frobenius_odd = (n - 1) % 2 == 1
                assert nontrivial == frobenius_odd, (ctx, h.vals)


def test_parity_law_f2():
    rep = parity_law_check(F2, 8, 300, seed=0)
    assert rep.checked == 300
    assert rep.violations == []


def test_parity_law_f4():
    rep = parity_law_check(F4, 6, 300, seed=0)
    assert rep.checked == 300
    assert rep.violations == []


def test_parity_law_quadratic_consistency():
    # t^2+t+1: r=1, n=2, parity differs => class must be 1
    _, cls = berlekamp_element(P(F2, 1, 1, 1))
    assert cls.value == 1


def test_even_sum_examples():
    f4 = F4
    w = f4.from_coeffs([0, 1])
    assert even_sum_criterion([F2.elem(0), F2.elem(1)])
    assert not even_sum_criterion([f4.zero, f4.one, w, w + 1])
    assert even_sum_criterion([f4.one, w])
    with pytest.raises(DomainError):
        even_sum_criterion([f4.one, f4.one])
    with pytest.raises(DomainError):
        even_sum_criterion([F3.elem(0), F3.elem(1)])


def test_even_sum_translation_invariance():
    f16 = make_field(2, 4)
    elems = list(enumerate_field(f16))
    rng = random.Random(8)
    combos = list(itertools.combinations(range(16), 3)) + \
        list(itertools.combinations(range(16), 4))
    rng.shuffle(combos)
    for combo in combos[:120]:
        omega = [elems[i] for i in combo]
        base = even_sum_criterion(omega)
        for cval in (1, 5, 9):
            c = f16.from_val(cval)
            assert even_sum_criterion([w + c for w in omega]) == base
