"""Polynomials in X over F_q[T]: exact resultants, symbolic discriminants,
square classes of F_q(T), and their subset-product independence test.

Resultants are Sylvester determinants evaluated by fraction-free (Bareiss)
elimination over F_q[T], so every intermediate division is exact.  Square
classes pair a monic squarefree representative with the square class of the
leading unit; independence of a family means no nonempty subset multiplies
to a square in F_q(T).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DomainError
from .ffield import FieldCtx
from .polyring import Poly, derivative, gcd, squarefree_decomposition
from .wreath import all_perms, perm_mul

SUBSET_GUARD = 20


class RPoly:
    """Polynomial in X whose coefficients live in F_q[T]."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [self._coerce(ctx, c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @staticmethod
    def _coerce(ctx, c) -> Poly:
        if isinstance(c, Poly):
            if c.ctx != ctx:
                raise DomainError("coefficient context mismatch")
            return c
        if isinstance(c, int):
            return Poly.constant(ctx, c)
        if isinstance(c, (list, tuple)):
            return Poly.from_elems(ctx, c)
        raise DomainError(f"cannot coerce {c!r} into F_q[T]")

    @property
    def deg_x(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_monic_x(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == Poly.one(self.ctx)

    def diff_x(self) -> "RPoly":
        p = self.ctx.p
        out = []
        for i in range(1, len(self.coeffs)):
            m = i % p
            out.append(self.coeffs[i] * m if m else Poly.zero(self.ctx))
        return RPoly(self.ctx, out)

    def eval_t(self, a) -> Poly:
        """Specialize T -> a, returning a univariate polynomial in X."""
        a = self.ctx.elem(a)
        return Poly.from_elems(self.ctx, [c(a) for c in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, RPoly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"RPoly({[c.vals for c in self.coeffs]})@F{self.ctx.q}[T]"


def _exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod(a, b)
    if not r.is_zero:
        raise AssertionError("fraction-free elimination produced a nonexact division")
    return q


def _bareiss_det(ctx: FieldCtx, rows: list[list[Poly]]) -> Poly:
    size = len(rows)
    if size == 0:
        return Poly.one(ctx)
    sign = 1
    prev = Poly.one(ctx)
    for c in range(size):
        piv = next((r for r in range(c, size) if not rows[r][c].is_zero), None)
        if piv is None:
            return Poly.zero(ctx)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        for i in range(c + 1, size):
            for j in range(c + 1, size):
                num = rows[c][c] * rows[i][j] - rows[i][c] * rows[c][j]
                rows[i][j] = _exact_div(num, prev)
            rows[i][c] = Poly.zero(ctx)
        prev = rows[c][c]
    det = rows[-1][-1]
    return -det if sign < 0 else det


def _sylvester_rows(f: RPoly, g: RPoly, n: int, m: int) -> list[list[Poly]]:
    ctx = f.ctx
    zero = Poly.zero(ctx)
    size = n + m
    fr = [f.coeffs[i] if i < len(f.coeffs) else zero for i in range(n + 1)][::-1]
    gr = [g.coeffs[i] if i < len(g.coeffs) else zero for i in range(m + 1)][::-1]
    rows = []
    for i in range(m):
        rows.append([zero] * i + fr + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + gr + [zero] * (size - m - 1 - i))
    return rows


def sym_resultant(f: RPoly, g: RPoly) -> Poly:
    """Res_X(f, g) in F_q[T]: Sylvester determinant, f-rows first."""
    if (f.deg_x or 0) < 1 or (g.deg_x or 0) < 1:
        raise DomainError("resultants require X-degree >= 1 on both sides")
    rows = _sylvester_rows(f, g, f.deg_x, g.deg_x)
    return _bareiss_det(f.ctx, rows)


def sym_discriminant(h: RPoly) -> Poly:
    """(-1)^{n(n-1)/2} Res_X(h, dh/dX) for h monic in X of X-degree n >= 2.

    dh/dX is given formal degree n-1 so specialization commutes with the
    univariate discriminant.
    """
    if (h.deg_x or 0) < 2:
        raise DomainError("discriminants require X-degree >= 2")
    if not h.is_monic_x():
        raise DomainError("symbolic discriminant requires a monic-in-X polynomial")
    n = h.deg_x
    hp = h.diff_x()
    if all(c.is_zero for c in hp.coeffs):
        return Poly.zero(h.ctx)
    rows = _sylvester_rows(h, hp, n, n - 1)
    det = _bareiss_det(h.ctx, rows)
    if n * (n - 1) // 2 % 2:
        det = -det
    return det


# ---------------------------------------------------------------------------
# square classes of F_q(T)


@dataclass(frozen=True)
class SquareClass:
    """A class in F_q(T)*/(F_q(T)*)^2: monic squarefree representative plus
    the square-class bit of the leading unit."""

    rep: Poly
    nonsquare_unit: bool

    def is_trivial(self) -> bool:
        return self.rep.degree == 0 and not self.nonsquare_unit

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        d = gcd(self.rep, other.rep)
        rep = (self.rep // d) * (other.rep // d)
        return SquareClass(rep.monic(), self.nonsquare_unit ^ other.nonsquare_unit)


def squarefree_part(u: Poly) -> SquareClass:
    """The square class of u in F_q(T)* (odd characteristic)."""
    if u.is_zero:
        raise DomainError("zero has no square class")
    ctx = u.ctx
    if ctx.p == 2:
        raise DomainError("square classes are undefined in characteristic 2")
    lc, sqf = squarefree_decomposition(u)
    rep = Poly.one(ctx)
    for g, e in sqf:
        if e % 2:
            rep = rep * g
    return SquareClass(rep, not ctx.is_square_val(lc.val))


def square_classes_independent(classes) -> bool:
    """No nonempty subset multiplies to a square in F_q(T)."""
    classes = list(classes)
    if not classes:
        return True
    ctx = classes[0].rep.ctx
    if ctx.p == 2:
        raise DomainError("square classes are undefined in characteristic 2")
    m = len(classes)
    if m > SUBSET_GUARD:
        raise DomainError(f"independence check guarded at {SUBSET_GUARD} classes")
    memo: dict[int, SquareClass] = {}
    for mask in range(1, 1 << m):
        low = mask & -mask
        rest = mask ^ low
        cls = classes[low.bit_length() - 1]
        if rest:
            cls = memo[rest] * cls
        memo[mask] = cls
        if cls.is_trivial():
            return False
    return True


# ---------------------------------------------------------------------------
# brute-force check of the sign-surjectivity lemma for subgroups of S_n^r


def _closure(gens: list[tuple], mul) -> set:
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        for h in gens:
            x = mul(g, h)
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    return seen


def _sign(perm) -> int:
    n = len(perm)
    seen = [False] * n
    sgn = 0
    for i in range(n):
        if not seen[i]:
            j = i
            ln = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            sgn ^= (ln - 1) & 1
    return sgn


def check_lemma_alt_sym(n: int, r: int, trials: int, seed: int = 0) -> bool:
    """Randomized validation that a subgroup of S_n^r with surjective
    coordinate projections and surjective sign vector is all of S_n^r.

    Returns True when no counterexample is found among `trials` random
    generated subgroups.
    """
    if not (2 <= n <= 5 and 1 <= r <= 3):
        raise DomainError("check is guarded at 2 <= n <= 5, 1 <= r <= 3")
    import math
    rng = random.Random(seed)
    perms = all_perms(n)
    full = math.factorial(n) ** r

    def tmul(a, b):
        return tuple(perm_mul(x, y) for x, y in zip(a, b))

    for _ in range(trials):
        for _attempt in range(200):
            gens = [tuple(rng.choice(perms) for _ in range(r))
                    for _ in range(rng.randint(1, 4))]
            projections_ok = all(
                len(_closure([g[i] for g in gens], perm_mul)) == math.factorial(n)
                for i in range(r))
            if projections_ok:
                break
        else:
            raise AssertionError("could not sample surjective projections")
        # surjectivity onto (Z/2)^r: sign vectors must span F_2^r
        vectors = [sum(_sign(g[i]) << i for i in range(r)) for g in gens]
        basis: dict[int, int] = {}
        for v in vectors:
            while v:
                tb = v.bit_length() - 1
                if tb not in basis:
                    basis[tb] = v
                    break
                v ^= basis[tb]
        if len(basis) < r:
            continue  # hypothesis fails, trial is vacuous
        if len(_closure(gens, tmul)) != full:
            return False
    return True
