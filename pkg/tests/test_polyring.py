"""Polynomial algebra: composition, irreducibility, factorization, roots,
discriminants, counting."""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypohff.errors import DomainError
from hypohff.ffield import enumerate_field, is_square, make_field
from hypohff.polyring import (Poly, compose, count_monic_irreducible,
                              derivative, discriminant, fact_type, factor,
                              gcd, is_irreducible, is_separable, monic_polys,
                              random_monic, roots_in_field,
                              roots_in_splitting_field,
                              squarefree_decomposition)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)


def brute_irreducible(f):
    """Trial division against all lower-degree monic polynomials (oracle)."""
    n = f.degree
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(f.ctx, d):
            if (f % g).is_zero:
                return False
    return True


def P(ctx, *low_to_high):
    return Poly(ctx, low_to_high)


def test_repr_and_zero_degree_sentinel():
    z = Poly.zero(F3)
    assert z.degree is None and z.is_zero
    assert P(F3, 1, 2).degree == 1
    with pytest.raises(DomainError):
        z.lc()


def test_compose_examples():
    # f = X^2, g = t + 1 over F_3 -> t^2 + 2t + 1
    f = P(F3, 0, 0, 1)
    g = P(F3, 1, 1)
    assert compose(f, g) == P(F3, 1, 2, 1)
    # identity outer polynomial
    h = P(F3, 2, 0, 1)
    assert compose(Poly.x(F3), h) == h
    # char-2 expansion: g^8 + t^3 at g = t
    comp = compose(P(F2, *([0] * 8 + [1])), Poly.x(F2)) + P(F2, 0, 0, 0, 1)
    assert comp == P(F2, 0, 0, 0, 1, 0, 0, 0, 0, 1)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
@settings(max_examples=150)
def test_compose_degree_law(df, dg, seed):
    rng = random.Random(seed)
    ctx = random.Random(seed + 1).choice([F2, F3, F4, F5])
    f = random_monic(ctx, df, rng)
    g = random_monic(ctx, dg, rng)
    assert compose(f, g).degree == df * dg


def test_is_irreducible_examples():
    assert is_irreducible(P(F3, 1, 0, 1))          # t^2 + 1 over F_3
    assert not is_irreducible(P(F5, 1, 0, 1))      # 2^2 + 1 = 0 mod 5
    swan = P(F2, 1, 0, 0, 1, 0, 0, 0, 0, 1)        # t^8 + t^3 + 1
    assert not is_irreducible(swan)
    ft = fact_type(swan)
    assert ft == (3, 5)  # t^3+t+1 divides (confirmed by trial division)
    lc, irr = factor(swan)
    prod = Poly.one(F2)
    for u, e in irr:
        prod = prod * u ** e
    assert prod == swan
    with pytest.raises(DomainError):
        is_irreducible(Poly.constant(F3, 2))


@pytest.mark.parametrize("ctx,maxdeg", [(F2, 6), (F3, 4), (F4, 4)])
def test_irreducible_matches_brute_force(ctx, maxdeg):
    for d in range(1, maxdeg + 1):
        for f in monic_polys(ctx, d):
            assert is_irreducible(f) == brute_irreducible(f)


def test_fact_type_examples():
    assert fact_type(P(F2, 0, 1, 1)) == (1, 1)        # t(t+1)
    assert fact_type(P(F2, 1, 1, 1)) == (2,)
    prod = P(F3, 1, 0, 1) * P(F3, 2, 1, 1)            # (t^2+1)(t^2+t+2)
    assert is_irreducible(P(F3, 2, 1, 1))
    assert fact_type(prod) == (2, 2)


@pytest.mark.parametrize("ctx,maxdeg", [(F2, 6), (F4, 5)])
def test_irreducible_iff_facttype_singleton(ctx, maxdeg):
    for d in range(1, maxdeg + 1):
        for f in monic_polys(ctx, d):
            assert is_irreducible(f) == (fact_type(f) == (d,))


def test_factor_reconstructs_and_multiplicity():
    rng = random.Random(5)
    for ctx in (F2, F3, F4, F5):
        for _ in range(60):
            f = random_monic(ctx, rng.randint(1, 7), rng)
            scale = ctx.from_val(rng.randrange(1, ctx.q))
            g = f * scale
            lc, irr = factor(g)
            prod = Poly.constant(ctx, lc)
            for u, e in irr:
                assert is_irreducible(u) and u.is_monic()
                prod = prod * u ** e
            assert prod == g


def test_squarefree_decomposition_char_p_powers():
    # t^4 + t^2 = (t^2 + t)^2 = t^2 (t+1)^2 over F_2
    lc, sqf = squarefree_decomposition(P(F2, 0, 0, 1, 0, 1))
    prod = Poly.one(F2)
    for g, e in sqf:
        prod = prod * g ** e
    assert prod == P(F2, 0, 0, 1, 0, 1)
    assert all(is_separable(g) for g, _ in sqf)
    # inseparable cube over F_3
    f = P(F3, 1, 0, 0, 1)  # t^3 + 1 = (t+1)^3
    lc, sqf = squarefree_decomposition(f)
    assert sqf == [(P(F3, 1, 1), 3)]


def test_derivative_gcd_separability_examples():
    assert derivative(P(F3, 0, 1, 0, 1)) == Poly.one(F3)  # d/dt (t^3 + t)
    assert gcd(P(F2, 0, 1, 1), P(F2, 0, 1)) == P(F2, 0, 1)
    assert not is_separable(P(F2, 0, 0, 1))
    assert is_separable(P(F2, 1, 1, 1))


def test_roots_in_splitting_field_examples():
    ext, roots = roots_in_splitting_field(P(F2, 1, 1, 1))
    assert ext.q == 4 and len(roots) == 2
    assert roots[0] + roots[1] == ext.one          # sum of roots = 1
    assert roots[0] * roots[1] == ext.one          # product = 1
    ext, roots = roots_in_splitting_field(P(F2, 1, 0, 0, 1))  # t^3 + 1
    assert ext.q == 4 and len(roots) == 3
    assert any(r == ext.one for r in roots)
    # irreducible cubic over F_3: three roots forming one Frobenius orbit
    cubic = next(f for f in monic_polys(F3, 3) if is_irreducible(f))
    ext, roots = roots_in_splitting_field(cubic)
    assert ext.q == 27 and len(roots) == 3
    orbit = {roots[0].val, (roots[0] ** 3).val, (roots[0] ** 9).val}
    assert orbit == {r.val for r in roots}
    with pytest.raises(DomainError):
        roots_in_splitting_field(P(F2, 0, 0, 1))


def test_roots_listed_once_lex_order():
    f = P(F5, 0, 1) * P(F5, 4, 1) * P(F5, 1, 0, 1)  # t(t+4)(t^2+1)
    ext, roots = roots_in_splitting_field(f)
    assert len(roots) == len({r.val for r in roots}) == 4
    keys = [r.coeffs for r in roots]
    assert keys == sorted(keys)
    assert roots_in_field(P(F5, 0, 1) * P(F5, 4, 1)) == [F5.elem(0), F5.elem(1)]


def test_discriminant_examples():
    # quadratic: b^2 - 4c; (b, c) = (1, 1) over F_5 -> -3 = 2
    assert discriminant(P(F5, 1, 1, 1)) == F5.elem(2)
    # specialization of the symbolic identity at T = 1 over F_3
    assert discriminant(P(F3, 1, 0, 2, 1)) == F3.elem(1)
    # inseparable square
    assert discriminant(P(F2, 0, 0, 1)) == F2.zero
    with pytest.raises(DomainError):
        discriminant(P(F2, 1, 1))


@pytest.mark.parametrize("ctx", [F3, F5])
def test_discriminant_equals_root_differences(ctx):
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        f = random_monic(ctx, rng.randint(2, 4), rng)
        if not is_separable(f):
            continue
        ext, roots = roots_in_splitting_field(f)
        prod = ext.one
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                d = roots[i] - roots[j]
                prod = prod * d * d
        from hypohff.ffield import embedding
        emb = embedding(ctx, ext)
        assert emb(discriminant(f)) == prod
        checked += 1


def test_count_monic_irreducible():
    assert count_monic_irreducible(F3, 2) == 3
    listed = [f for f in monic_polys(F3, 2) if brute_irreducible(f)]
    assert len(listed) == 3
    assert {tuple(f.vals) for f in listed} == {(1, 0, 1), (2, 1, 1), (2, 2, 1)}
    assert count_monic_irreducible(F2, 1) == 2
    assert count_monic_irreducible(make_field(101, 1), 2) == 5050 == (101 ** 2 - 101) // 2


@pytest.mark.parametrize("ctx,n", [(F2, 4), (F3, 3), (F5, 2), (F4, 3), (F5, 4)])
def test_count_matches_census(ctx, n):
    total = sum(1 for f in monic_polys(ctx, n) if is_irreducible(f))
    assert total == count_monic_irreducible(ctx, n)


def test_monic_polys_order_and_size():
    polys = list(monic_polys(F3, 2))
    assert len(polys) == 9
    assert polys[0] == P(F3, 0, 0, 1)
    # (a_1, a_2) lex order: second poly bumps a_2
    assert polys[1] == P(F3, 1, 0, 1)
    assert polys[3] == P(F3, 0, 1, 1)


def test_composition_separability_equivalence():
    # f(g) separable <=> f separable and every g - w separable (w roots of f)
    for ctx in (F3, F4):
        for f in monic_polys(ctx, 2):
            for g in itertools.islice(monic_polys(ctx, 2), 0, None, 2):
                comp = compose(f, g)
                lhs = is_separable(comp)
                if not is_separable(f):
                    assert not lhs
                    continue
                ext, roots = roots_in_splitting_field(f)
                from hypohff.ffield import embedding
                emb = embedding(ctx, ext)
                g_ext = Poly(ext, [emb.table[v] for v in g.vals])
                rhs = all(is_separable(g_ext - Poly.constant(ext, w)) for w in roots)
                assert lhs == rhs
                if comp.degree >= 2:
                    assert lhs == (not discriminant(comp) == ext.zero if False else lhs)
                    assert (discriminant(comp).val != 0) == lhs


def test_degree_chain_for_irreducible_compositions():
    # an irreducible f(g) forces deg f(g) = n * deg f
    count = 0
    for f in monic_polys(F3, 2):
        if not is_irreducible(f):
            continue
        for g in monic_polys(F3, 2):
            comp = compose(f, g)
            if is_separable(comp) and is_irreducible(comp):
                assert comp.degree == f.degree * g.degree
                count += 1
    assert count > 0


def test_factorization_deterministic_across_calls():
    rng = random.Random(3)
    for _ in range(20):
        f = random_monic(F4, 6, rng)
        assert factor(f) == factor(f)
        assert factor(f, seed=1) == factor(f, seed=1)
