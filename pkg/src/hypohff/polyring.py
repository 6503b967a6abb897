"""Univariate polynomial algebra over a finite field.

Polynomials are immutable, storing the context plus a tuple of packed
coefficient values, low degree first, trailing zeros stripped.  The zero
polynomial has degree None (a sentinel, never -1 arithmetic).

Beyond ring arithmetic this module provides the classical exact machinery:
composition, gcd, separability, Rabin's irreducibility test, squarefree /
distinct-degree / equal-degree (Cantor-Zassenhaus) factorization, root
extraction in a deterministically built splitting field, resultant-based
discriminants, and the Moebius count of monic irreducibles.

Equal-degree splitting needs randomness; it draws from a PRNG seeded from
(seed, field, coefficients) so factorizations are reproducible run to run.
"""
from __future__ import annotations

import hashlib
import itertools
import math
import random
from typing import Iterator

from .errors import DomainError
from .ffield import (FieldCtx, FieldElem, Embedding, embedding, make_field,
                     prime_factors)

DEFAULT_SEED = 0


class Poly:
    """Dense univariate polynomial over a fixed `FieldCtx`."""

    __slots__ = ("ctx", "vals")

    def __init__(self, ctx: FieldCtx, vals=()):
        vs = list(vals)
        while vs and vs[-1] == 0:
            vs.pop()
        self.ctx = ctx
        self.vals = tuple(vs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_elems(cls, ctx: FieldCtx, elems) -> "Poly":
        return cls(ctx, [ctx.elem(e).val for e in elems])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "Poly":
        return cls(ctx, (ctx.elem(c).val,))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (1,))

    def __reduce__(self):
        return (_rebuild_poly, (self.ctx.p, self.ctx.k, self.vals))

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.vals) - 1 if self.vals else None

    @property
    def is_zero(self) -> bool:
        return not self.vals

    def lc(self) -> FieldElem:
        if not self.vals:
            raise DomainError("zero polynomial has no leading coefficient")
        return FieldElem(self.ctx, self.vals[-1])

    def coeff(self, i: int) -> FieldElem:
        v = self.vals[i] if 0 <= i < len(self.vals) else 0
        return FieldElem(self.ctx, v)

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.ctx, v) for v in self.vals)

    def is_monic(self) -> bool:
        return bool(self.vals) and self.vals[-1] == 1

    def monic(self) -> "Poly":
        if not self.vals:
            return self
        top = self.vals[-1]
        if top == 1:
            return self
        inv = self.ctx.invv(top)
        return Poly(self.ctx, [self.ctx.mulv(v, inv) for v in self.vals])

    # -- ring operations --------------------------------------------------------

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise DomainError("polynomial context mismatch")
            return other
        if isinstance(other, (FieldElem, int)):
            return Poly.constant(self.ctx, self.ctx.elem(other))
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        a, b = self.vals, o.vals
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = ctx.addv(out[i], v)
        return Poly(ctx, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        ctx = self.ctx
        return Poly(ctx, [ctx.negv(v) for v in self.vals])

    def __mul__(self, other):
        if isinstance(other, (FieldElem, int)):
            c = self.ctx.elem(other).val
            return Poly(self.ctx, [self.ctx.mulv(v, c) for v in self.vals])
        o = self._check(other)
        if o is NotImplemented:
            return o
        a, b = self.vals, o.vals
        if not a or not b:
            return Poly(self.ctx)
        ctx = self.ctx
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ctx.addv(out[i + j], ctx.mulv(x, y))
        return Poly(ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise DomainError("polynomial division by zero")
        ctx = self.ctx
        a = list(self.vals)
        b = o.vals
        db = len(b) - 1
        inv = ctx.invv(b[-1])
        quo = [0] * max(len(a) - db, 0)
        while len(a) - 1 >= db and a:
            c = ctx.mulv(a[-1], inv)
            off = len(a) - 1 - db
            if c:
                quo[off] = c
                for j in range(db):
                    a[off + j] = ctx.subv(a[off + j], ctx.mulv(c, b[j]))
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        return Poly(ctx, quo), Poly(ctx, a)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative polynomial power")
        r = Poly.one(self.ctx)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __call__(self, a: FieldElem) -> FieldElem:
        ctx = self.ctx
        if isinstance(a, int):
            a = ctx.elem(a)
        if a.ctx != ctx:
            raise DomainError("evaluation point not in the coefficient field")
        acc = 0
        for v in reversed(self.vals):
            acc = ctx.addv(ctx.mulv(acc, a.val), v)
        return FieldElem(ctx, acc)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.vals == other.vals
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.vals))

    def __repr__(self):
        if not self.vals:
            return f"Poly0@F{self.ctx.q}"
        terms = []
        for i in range(len(self.vals) - 1, -1, -1):
            v = self.vals[i]
            if v:
                terms.append(f"{v}*t^{i}")
        return "Poly(" + " + ".join(terms) + f")@F{self.ctx.q}"


def _rebuild_poly(p, k, vals):
    return Poly(make_field(p, k), vals)


# ---------------------------------------------------------------------------
# elementary operations


def derivative(f: Poly) -> Poly:
    ctx = f.ctx
    p = ctx.p
    out = []
    for i in range(1, len(f.vals)):
        m = i % p
        out.append(ctx.mulv(f.vals[i], m) if m else 0)
    return Poly(ctx, out)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    if f.ctx != g.ctx:
        raise DomainError("polynomial context mismatch")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def is_separable(f: Poly) -> bool:
    """gcd(f, f') is constant."""
    if f.is_zero or f.degree == 0:
        raise DomainError("separability is asked of nonconstant polynomials")
    return gcd(f, derivative(f)).degree == 0


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(t)) by Horner evaluation in the polynomial ring."""
    if f.ctx != g.ctx:
        raise DomainError("polynomial context mismatch")
    acc = Poly.zero(f.ctx)
    for v in reversed(f.vals):
        acc = acc * g + FieldElem(f.ctx, v)
    return acc


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    """base^e mod `mod` by square and multiply."""
    r = Poly.one(base.ctx)
    b = base % mod
    while e:
        if e & 1:
            r = (r * b) % mod
        b = (b * b) % mod
        e >>= 1
    return r


# ---------------------------------------------------------------------------
# irreducibility (Rabin), with a packed fast path over F_2


def _f2_pack(vals) -> int:
    b = 0
    for i, v in enumerate(vals):
        if v:
            b |= 1 << i
    return b


def _f2_mulmod(a: int, b: int, f: int, n: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    while r.bit_length() > n:
        r ^= f << (r.bit_length() - 1 - n)
    return r


def _f2_gcd(a: int, b: int) -> int:
    while b:
        while a.bit_length() >= b.bit_length() and a:
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _f2_irreducible(f: int) -> bool:
    n = f.bit_length() - 1
    if n == 1:
        return True
    needed = {n // ell for ell in prime_factors(n)}
    h = 2  # the polynomial t
    for j in range(1, n + 1):
        h = _f2_mulmod(h, h, f, n)
        if j in needed and _f2_gcd(f, h ^ 2).bit_length() > 1:
            return False
    return h == 2


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over F_q (unit factors ignored)."""
    if f.is_zero or f.degree == 0:
        raise DomainError("irreducibility is asked of nonconstant polynomials")
    f = f.monic()
    n = f.degree
    if n == 1:
        return True
    ctx = f.ctx
    if ctx.p == 2 and ctx.k == 1:
        return _f2_irreducible(_f2_pack(f.vals))
    x = Poly.x(ctx)
    needed = {n // ell for ell in prime_factors(n)}
    h = x
    for j in range(1, n + 1):
        h = pow_mod(h, ctx.q, f)
        if j in needed and gcd(f, h - x).degree != 0:
            return False
    return (h - x).is_zero


# ---------------------------------------------------------------------------
# factorization: squarefree -> distinct degree -> equal degree


def _pth_root_elem(ctx: FieldCtx, v: int) -> int:
    # c^(q/p) is the p-th root in a perfect field of size q = p^k
    return ctx.powv(v, ctx.q // ctx.p)


def squarefree_decomposition(f: Poly):
    """(lc, [(monic squarefree g_i, e_i)]) with f = lc * prod g_i^{e_i}."""
    if f.is_zero:
        raise DomainError("zero polynomial has no squarefree decomposition")
    ctx = f.ctx
    p = ctx.p
    lc = f.lc()
    f = f.monic()
    factors: list[tuple[Poly, int]] = []
    n, sqf = 1, False
    if f.degree < 1:
        return lc, []
    while True:
        d = derivative(f)
        if not d.is_zero:
            g = gcd(f, d)
            h = f // g
            i = 1
            while h.degree > 0:
                G = gcd(g, h)
                H = h // G
                if H.degree > 0:
                    factors.append((H, i * n))
                g, h, i = g // G, G, i + 1
            if g.degree == 0:
                sqf = True
            else:
                f = g
        if not sqf:
            # f is now a p-th power: take the exact p-th root
            root = [_pth_root_elem(ctx, f.vals[i * p]) for i in range(f.degree // p + 1)]
            f = Poly(ctx, root)
            n *= p
        else:
            break
    factors.sort(key=lambda ge: (ge[1], ge[0].degree, ge[0].vals))
    return lc, factors


def distinct_degree(f: Poly):
    """[(product of degree-d irreducible factors, d)] for monic squarefree f."""
    ctx = f.ctx
    x = Poly.x(ctx)
    out = []
    h = x
    i = 1
    while f.degree >= 2 * i:
        h = pow_mod(h, ctx.q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _derived_rng(seed: int, f: Poly) -> random.Random:
    h = hashlib.blake2b(digest_size=8)
    h.update(str(seed).encode())
    h.update(str((f.ctx.p, f.ctx.k)).encode())
    h.update(str(f.vals).encode())
    return random.Random(int.from_bytes(h.digest(), "big"))


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f, all of whose factors have degree d."""
    if f.degree == d:
        return [f]
    ctx = f.ctx
    q = ctx.q
    stack = [f]
    done = []
    while stack:
        h = stack.pop()
        if h.degree == d:
            done.append(h)
            continue
        while True:
            u = Poly(ctx, [rng.randrange(q) for _ in range(h.degree)])
            if u.degree is None or u.degree < 1:
                continue
            if ctx.p == 2:
                w = u
                v = u
                for _ in range(ctx.k * d - 1):
                    v = pow_mod(v, 2, h)
                    w = w + v
            else:
                w = pow_mod(u, (q ** d - 1) // 2, h) - 1
            g = gcd(h, w)
            if 0 < (g.degree or 0) < h.degree:
                stack.append(g)
                stack.append(h // g)
                break
    return done


def factor(f: Poly, seed: int = DEFAULT_SEED):
    """(lc, [(monic irreducible, multiplicity)]), deterministically ordered."""
    if f.is_zero or f.degree == 0:
        raise DomainError("factorization is asked of nonconstant polynomials")
    rng = _derived_rng(seed, f)
    lc, sqf = squarefree_decomposition(f)
    irr: list[tuple[Poly, int]] = []
    for g, e in sqf:
        for h, d in distinct_degree(g):
            for u in equal_degree(h, d, rng):
                irr.append((u, e))
    irr.sort(key=lambda ue: (ue[0].degree, ue[0].vals, ue[1]))
    return lc, irr


def fact_type(f: Poly, seed: int = DEFAULT_SEED) -> tuple[int, ...]:
    """Factorization type: sorted degrees of irreducible factors, with multiplicity."""
    if f.is_zero or f.degree == 0:
        raise DomainError("factorization type is asked of nonconstant polynomials")
    _, irr = factor(f, seed)
    parts = []
    for u, e in irr:
        parts.extend([u.degree] * e)
    return tuple(sorted(parts))


def roots_in_field(f: Poly, seed: int = DEFAULT_SEED) -> list[FieldElem]:
    """Distinct roots of f in its own coefficient field, lex order."""
    _, irr = factor(f, seed)
    ctx = f.ctx
    roots = [FieldElem(ctx, ctx.negv(u.monic().vals[0])) for u, _ in irr if u.degree == 1]
    roots.sort(key=lambda a: a.coeffs)
    return roots


def roots_in_splitting_field(f: Poly, seed: int = DEFAULT_SEED):
    """(splitting field F_{q^m}, all deg f roots, each once, lex order).

    m is the lcm of the irreducible-factor degrees; the splitting field is
    built over F_p directly and reached through the deterministic subfield
    embedding of F_q.
    """
    if f.is_zero or f.degree == 0:
        raise DomainError("splitting field is asked of nonconstant polynomials")
    if not is_separable(f):
        raise DomainError("inseparable polynomial: roots are not distinct")
    _, irr = factor(f, seed)
    m = 1
    for u, _ in irr:
        m = math.lcm(m, u.degree)
    ctx = f.ctx
    ext = make_field(ctx.p, ctx.k * m)
    emb = embedding(ctx, ext)
    rng = _derived_rng(seed, f)
    roots = []
    for u, _ in irr:
        u_ext = Poly(ext, [emb.table[v] for v in u.vals])
        for lin in equal_degree(u_ext, 1, rng):
            lin = lin.monic()
            roots.append(FieldElem(ext, ext.negv(lin.vals[0])))
    roots.sort(key=lambda a: a.coeffs)
    return ext, roots


# ---------------------------------------------------------------------------
# resultants / discriminants over the field


def _sylvester_det(ctx: FieldCtx, fv, gv, n: int, m: int) -> int:
    """det of the Sylvester matrix of f (formal degree n) and g (formal
    degree m), f-rows first, by Gaussian elimination over the field."""
    size = n + m
    if size == 0:
        return 1
    rows = []
    frow = [fv[i] if i < len(fv) else 0 for i in range(n + 1)][::-1]
    grow = [gv[i] if i < len(gv) else 0 for i in range(m + 1)][::-1]
    for i in range(m):
        rows.append([0] * i + frow + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + grow + [0] * (size - m - 1 - i))
    det = 1
    sign = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        pval = rows[c][c]
        det = ctx.mulv(det, pval)
        inv = ctx.invv(pval)
        for r in range(c + 1, size):
            lead = rows[r][c]
            if lead:
                factor_ = ctx.mulv(lead, inv)
                rows[r] = [ctx.subv(x, ctx.mulv(factor_, y))
                           for x, y in zip(rows[r], rows[c])]
    if sign < 0:
        det = ctx.negv(det)
    return det


def discriminant(f: Poly) -> FieldElem:
    """Disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f), via the Sylvester matrix.

    f' is given formal degree n-1, so the identity with the squared root
    differences holds in every characteristic.
    """
    if f.is_zero or f.degree < 2:
        raise DomainError("discriminant is asked of polynomials of degree >= 2")
    ctx = f.ctx
    n = f.degree
    fp = derivative(f)
    if fp.is_zero:
        return ctx.zero
    det = _sylvester_det(ctx, f.vals, fp.vals, n, n - 1)
    if n * (n - 1) // 2 % 2:
        det = ctx.negv(det)
    return FieldElem(ctx, ctx.divv(det, f.vals[-1]))


# ---------------------------------------------------------------------------
# counting and enumeration


def _moebius(n: int) -> int:
    m = 1
    for ell in prime_factors(n):
        if n % (ell * ell) == 0:
            return 0
        m = -m
    return m


def count_monic_irreducible(ctx: FieldCtx, n: int) -> int:
    """(1/n) sum_{d|n} mu(d) q^{n/d}, the necklace count."""
    if n < 1:
        raise DomainError("degree must be >= 1")
    q = ctx.q
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _moebius(d) * q ** (n // d)
    assert total % n == 0
    return total // n


def monic_polys(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All monic degree-n polynomials t^n + a_1 t^{n-1} + ... + a_n, iterating
    (a_1, ..., a_n) in lex order of the field's element order."""
    if n < 0:
        raise DomainError("degree must be >= 0")
    order = ctx.lex_vals()
    for avals in itertools.product(order, repeat=n):
        yield Poly(ctx, tuple(reversed(avals)) + (1,))


def random_monic(ctx: FieldCtx, n: int, rng: random.Random) -> Poly:
    return Poly(ctx, [rng.randrange(ctx.q) for _ in range(n)] + [1])
