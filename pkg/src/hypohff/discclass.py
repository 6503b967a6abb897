"""Discriminant classes of separable polynomials.

Odd characteristic: the class is the square class of the discriminant
(trivial means the Galois group acts by even permutations).  Characteristic
2: the class is the Artin-Schreier coset of the Berlekamp element

    A(h) = sum over unordered root pairs of x_i x_j / (x_i + x_j)^2,

detected in F_{2^k} by the absolute trace.  The sum runs over unordered
pairs: summing ordered pairs would count each term twice and vanish
identically in characteristic 2.

The testable consequence wired in here is the parity law: a separable h of
degree n over F_{2^k} has r irreducible factors with r = n mod 2 exactly
when the class is trivial.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DomainError
from .ffield import FieldCtx, FieldElem, abs_trace, embedding, is_square
from .polyring import (Poly, discriminant, factor, is_separable, random_monic,
                       roots_in_splitting_field)

EVEN_SUM_GUARD = 20


@dataclass(frozen=True)
class ASClass:
    """Artin-Schreier discriminant class: a single F_2 bit plus the raw
    Berlekamp element (in the base field) kept for diagnostics."""

    value: int
    raw: FieldElem


def berlekamp_element(h: Poly, seed: int = 0) -> tuple[FieldElem, ASClass]:
    """(A(h) in the splitting field, its Artin-Schreier class).

    A(h) is a symmetric function of the roots, so it must land in the base
    field; if it does not, something is broken and we say so loudly.
    """
    ctx = h.ctx
    if ctx.p != 2:
        raise DomainError("Berlekamp classes require characteristic 2")
    if h.is_zero or (h.degree or 0) < 2:
        raise DomainError("Berlekamp classes require degree >= 2")
    if not is_separable(h):
        raise DomainError("Berlekamp classes require a separable polynomial")
    ext, roots = roots_in_splitting_field(h, seed)
    a = ext.zero
    for i in range(len(roots)):
        xi = roots[i]
        for j in range(i + 1, len(roots)):
            s = xi + roots[j]
            a = a + xi * roots[j] / (s * s)
    emb = embedding(ctx, ext)
    raw = emb.preimage(a)  # raises if A escaped the base field (a bug)
    cls = ASClass(abs_trace(raw), raw)
    return a, cls


def disc_class_odd(h: Poly) -> bool:
    """True iff the square class of Disc(h) is trivial (group inside A_n)."""
    ctx = h.ctx
    if ctx.p == 2:
        raise DomainError("square-class discriminants require odd characteristic")
    if not is_separable(h):
        raise DomainError("discriminant classes require a separable polynomial")
    return is_square(discriminant(h))


@dataclass
class ParityReport:
    field: str
    degree_bound: int
    samples: int
    checked: int
    violations: list


def parity_law_check(ctx: FieldCtx, degree_bound: int, samples: int,
                     seed: int = 0) -> ParityReport:
    """Sample separable monic h and test: [#factors = deg h (mod 2)] iff the
    Berlekamp class is trivial.  Violations are collected (expected none)."""
    if ctx.p != 2:
        raise DomainError("the parity law lives in characteristic 2")
    if degree_bound < 2:
        raise DomainError("degree bound must be >= 2")
    rng = random.Random(seed)
    report = ParityReport(repr(ctx), degree_bound, samples, 0, [])
    while report.checked < samples:
        n = rng.randint(2, degree_bound)
        h = random_monic(ctx, n, rng)
        if not is_separable(h):
            continue
        _, irr = factor(h)
        r = len(irr)
        _, cls = berlekamp_element(h)
        if ((r - n) % 2 == 0) != (cls.value == 0):
            report.violations.append((h.vals, r, n, cls.value))
        report.checked += 1
    return report


def even_sum_criterion(omegas) -> bool:
    """No even-cardinality nonempty subset of the shift set sums to zero.

    This is the exact linear-disjointness test for quadratic substitutions
    in characteristic 2.
    """
    omegas = list(omegas)
    if not omegas:
        return True
    ctx = omegas[0].ctx
    if ctx.p != 2:
        raise DomainError("the even-sum criterion lives in characteristic 2")
    vals = [w.val for w in omegas]
    if len(set(vals)) != len(vals):
        raise DomainError("shift elements must be distinct")
    if len(vals) > EVEN_SUM_GUARD:
        raise DomainError(f"even-sum check guarded at {EVEN_SUM_GUARD} elements")
    for size in range(2, len(vals) + 1, 2):
        for combo in itertools.combinations(vals, size):
            s = 0
            for v in combo:
                s ^= v
            if s == 0:
                return False
    return True
