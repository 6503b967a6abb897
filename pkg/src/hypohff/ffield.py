"""Exact arithmetic in prime fields and their finite extensions.

A `FieldCtx` fixes a prime p, an extension degree k >= 1 and a monic
irreducible modulus of degree k over F_p.  Elements are immutable and store
their coefficient vector packed into one integer in base p, low degree
first.  Fields small enough to enumerate lazily build discrete-log tables,
making multiplication, inversion and powering O(1) list lookups.

Everything here is deterministic: the modulus is the lexicographically
least monic irreducible of its degree, elements enumerate in lexicographic
order of their coefficient vectors, and subfield embeddings send the
generator to the lexicographically least root of the source modulus.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import DomainError

WORD_CAP = 1 << 62        # q must stay below this
TABLE_CAP = 1 << 20       # largest q for which discrete-log tables are built
_ADDTAB_CAP = 600         # full addition tables for small odd-char extensions
_EMBED_CAP = 1 << 20      # largest source field for a full embedding table

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial scratch arithmetic over F_p, used only while constructing field
# contexts (before any FieldCtx exists).  Coefficient tuples, low degree
# first, trailing zeros stripped.

def _ptrim(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _pmulmod(a, b, m, p):
    if not a or not b:
        return ()
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    k = len(m) - 1
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * m[j]) % p
    return _ptrim(prod)


def _ppowmod(a, e, m, p):
    r = (1,)
    while e:
        if e & 1:
            r = _pmulmod(r, a, m, p)
        a = _pmulmod(a, a, m, p)
        e >>= 1
    return r


def _pgcd(a, b, p):
    while b:
        # a mod b by plain long division
        a = list(a)
        db, lb = len(b) - 1, b[-1]
        inv = pow(lb, p - 2, p)
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % p
            if c:
                off = len(a) - 1 - db
                for j in range(db + 1):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, _ptrim(a)
    return a


def _pirreducible(f, p):
    """Rabin's test for a monic polynomial over F_p (coefficient tuple)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    needed = {n // ell for ell in prime_factors(n)}
    h = x
    for j in range(1, n + 1):
        h = _ppowmod(h, p, f, p)
        if j in needed:
            diff = list(h) + [0] * (2 - len(h))
            diff[1] = (diff[1] - 1) % p
            g = _pgcd(f, _ptrim(diff), p)
            if len(g) - 1 != 0:
                return False
    diff = list(h) + [0] * (2 - len(h))
    diff[1] = (diff[1] - 1) % p
    return not _ptrim(diff)


# ---------------------------------------------------------------------------


class FieldCtx:
    """A finite field F_{p^k}, with value-level arithmetic on packed ints.

    Public element access goes through `FieldElem`; the `*v` methods work on
    packed integer values directly and are what inner loops should use.
    """

    __slots__ = ("p", "k", "q", "modulus", "_modbits", "_exp", "_log",
                 "_gen", "_tr", "_addtab", "_lexvals")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._modbits = _pack(modulus, p) if p == 2 else None
        self._exp = None
        self._log = None
        self._gen = None
        self._tr = None
        self._addtab = None
        self._lexvals = None

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"F_{self.q}"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- element constructors ------------------------------------------------

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def elem(self, x) -> "FieldElem":
        """Coerce an int (prime-subfield value) or FieldElem into this field."""
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise DomainError("field context mismatch")
            return x
        if isinstance(x, int):
            return FieldElem(self, x % self.p)
        raise DomainError(f"cannot coerce {x!r} into {self!r}")

    def from_coeffs(self, coeffs) -> "FieldElem":
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.k:
            raise DomainError("coefficient vector longer than extension degree")
        cs += [0] * (self.k - len(cs))
        return FieldElem(self, _pack(cs, self.p))

    def from_val(self, val: int) -> "FieldElem":
        if not 0 <= val < self.q:
            raise DomainError("packed value out of range")
        return FieldElem(self, val)

    @property
    def gen(self) -> "FieldElem":
        """Lexicographically least multiplicative generator of F_q*."""
        return FieldElem(self, self.gen_val())

    def gen_val(self) -> int:
        if self._gen is None:
            fac = prime_factors(self.q - 1)
            for v in self.lex_vals():
                if v == 0:
                    continue
                if all(self._pow_raw(v, (self.q - 1) // ell) != 1 for ell in fac):
                    self._gen = v
                    break
        return self._gen

    # -- deterministic enumeration -------------------------------------------

    def lex_vals(self) -> list[int]:
        """All packed values, ordered by lex order on coefficient vectors."""
        if self._lexvals is None:
            p, k = self.p, self.k
            if k == 1:
                self._lexvals = list(range(p))
            else:
                out = []
                for m in range(self.q):
                    v = 0
                    mm = m
                    # digits of m, most significant first = c_0 .. c_{k-1}
                    for i in range(k - 1, -1, -1):
                        v += (mm // p ** i) * p ** (k - 1 - i)
                        mm %= p ** i
                    out.append(v)
                self._lexvals = out
        return self._lexvals

    # -- value-level arithmetic ----------------------------------------------

    def digits(self, val: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(val % p)
            val //= p
        return tuple(out)

    def addv(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % p
        tab = self._addtab
        if tab is None and self.q <= _ADDTAB_CAP:
            tab = self._build_addtab()
        if tab is not None:
            return tab[a][b]
        return _pack([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))], p)

    def subv(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.addv(a, self.negv(b))

    def negv(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.k == 1:
            return (p - a) % p
        return _pack([(p - x) % p for x in self.digits(a)], p)

    def mulv(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            if self.p == 2:
                return 1
            return a * b % self.p
        exp = self._exp
        if exp is None:
            exp = self._ensure_tables()
        if exp is not None:
            return exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def invv(self, a: int) -> int:
        if a == 0:
            raise DomainError("division by zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp = self._exp
        if exp is None:
            exp = self._ensure_tables()
        if exp is not None:
            return exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.powv(a, self.q - 2)

    def divv(self, a: int, b: int) -> int:
        return self.mulv(a, self.invv(b))

    def powv(self, a: int, e: int) -> int:
        if e < 0:
            return self.powv(self.invv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self.k > 1:
            exp = self._exp
            if exp is None:
                exp = self._ensure_tables()
            if exp is not None:
                return exp[self._log[a] * e % (self.q - 1)]
        return self._pow_raw(a, e)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a) if self.k > 1 else r * a % self.p
            a = self._mul_raw(a, a) if self.k > 1 else a * a % self.p
            e >>= 1
        return r

    def tracev(self, a: int) -> int:
        """Absolute trace down to F_p, returned as an int in [0, p)."""
        if self.k == 1:
            return a
        tr = self._tr
        if tr is None and self.q <= TABLE_CAP:
            tr = self._build_trace_table()
        if tr is not None:
            return tr[a]
        return self._trace_raw(a)

    def _trace_raw(self, a: int) -> int:
        x = a
        s = a
        for _ in range(self.k - 1):
            x = self.powv(x, self.p)
            s = self.addv(s, x)
        digs = self.digits(s)
        if any(digs[1:]):
            raise AssertionError("trace left the prime subfield")
        return digs[0]

    def is_square_val(self, a: int) -> bool:
        if self.p == 2:
            raise DomainError("square classes are undefined in characteristic 2")
        if a == 0:
            return True
        if self.k > 1 and self._exp is None:
            self._ensure_tables()
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.powv(a, (self.q - 1) // 2) == 1

    # -- internals -----------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                a <<= 1
                b >>= 1
            mod, k = self._modbits, self.k
            while r.bit_length() > k:
                r ^= mod << (r.bit_length() - 1 - k)
            return r
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        m, k = self.modulus, self.k
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * m[j]) % p
        return _pack(prod[:k], p)

    def _ensure_tables(self):
        if self._exp is not None or self.k == 1 or self.q > TABLE_CAP:
            return self._exp
        g = 0
        fac = prime_factors(self.q - 1)
        for v in self.lex_vals():
            if v == 0:
                continue
            if all(self._pow_raw(v, (self.q - 1) // ell) != 1 for ell in fac):
                g = v
                break
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [0] * self.q
        cur = 1
        for i in range(n):
            exp[i] = cur
            exp[i + n] = cur
            log[cur] = i
            cur = self._mul_raw(cur, g)
        self._gen = g
        self._log = log
        self._exp = exp
        return exp

    def _build_trace_table(self):
        tr = [self._trace_raw(v) for v in range(self.q)]
        self._tr = tr
        return tr

    def _build_addtab(self):
        p, k, q = self.p, self.k, self.q
        rows = []
        digs = [self.digits(v) for v in range(q)]
        for a in range(q):
            da = digs[a]
            rows.append([_pack([(x + y) % p for x, y in zip(da, digs[b])], p)
                         for b in range(q)])
        self._addtab = rows
        return rows


def _pack(digs, p) -> int:
    v = 0
    for d in reversed(list(digs)):
        v = v * p + d
    return v


class FieldElem:
    """Immutable element of a `FieldCtx`; canonical packed representation."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.digits(self.val)

    def __reduce__(self):
        return (_rebuild_elem, (self.ctx.p, self.ctx.k, self.val))

    def _rhs(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise DomainError("field context mismatch")
            return other.val
        if isinstance(other, int):
            return other % self.ctx.p
        return None

    def __add__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.addv(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.subv(self.val, v))

    def __rsub__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.subv(v, self.val))

    def __mul__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mulv(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.divv(self.val, v))

    def __rtruediv__(self, other):
        v = self._rhs(other)
        if v is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.divv(v, self.val))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.negv(self.val))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.powv(self.val, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.ctx.p and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.val}@F{self.ctx.q}"
        return f"{list(self.coeffs)}@F{self.ctx.q}"


def _rebuild_elem(p, k, val):
    return FieldElem(make_field(p, k), val)


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldCtx:
    """The field F_{p^k} with the lex-least monic irreducible modulus.

    For k = 1 the modulus is the placeholder x.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"extension degree k = {k} must be >= 1")
    if p ** k >= WORD_CAP:
        raise DomainError(f"field size p^k = {p}^{k} exceeds the word-size cap")
    if k == 1:
        return FieldCtx(p, 1, (0, 1))
    import itertools as _it
    for tail in _it.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if _pirreducible(cand, p):
            return FieldCtx(p, k, cand)
    raise AssertionError("no irreducible modulus found")


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Dispatch a single named field operation (add, sub, mul, div)."""
    try:
        fn = {"add": a.__add__, "sub": a.__sub__,
              "mul": a.__mul__, "div": a.__truediv__}[op]
    except KeyError:
        raise DomainError(f"unknown operation {op!r}") from None
    return fn(b)


def is_square(a: FieldElem) -> bool:
    """Whether a is a square; only defined in odd characteristic."""
    return a.ctx.is_square_val(a.val)


def abs_trace(a: FieldElem) -> int:
    """Absolute trace Tr_{F_q/F_p}(a) as an int in [0, p)."""
    return a.ctx.tracev(a.val)


def enumerate_field(ctx: FieldCtx) -> Iterator[FieldElem]:
    """All q elements, in lex order on coefficient vectors."""
    for v in ctx.lex_vals():
        yield FieldElem(ctx, v)


class Embedding:
    """Subfield embedding F_{p^j} -> F_{p^k} (j | k), as a value table.

    The generator image is the lex-least root of the source modulus in the
    target field, so the embedding is reproducible.
    """

    __slots__ = ("src", "dst", "table", "_pre")

    def __init__(self, src: FieldCtx, dst: FieldCtx, table: list[int]):
        self.src = src
        self.dst = dst
        self.table = table
        self._pre = None

    def __call__(self, a: FieldElem) -> FieldElem:
        if a.ctx != self.src:
            raise DomainError("element not in the embedding's source field")
        return FieldElem(self.dst, self.table[a.val])

    def preimage(self, b: FieldElem) -> FieldElem:
        if b.ctx != self.dst:
            raise DomainError("element not in the embedding's target field")
        if self._pre is None:
            self._pre = {v: i for i, v in enumerate(self.table)}
        try:
            return FieldElem(self.src, self._pre[b.val])
        except KeyError:
            raise DomainError("element has no preimage in the subfield") from None


_EMB_CACHE: dict[tuple[int, int, int], Embedding] = {}


def embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    """The deterministic embedding of src into dst; requires src.k | dst.k."""
    if src.p != dst.p:
        raise DomainError("embedding requires equal characteristic")
    if dst.k % src.k != 0:
        raise DomainError("no subfield embedding: source degree does not divide target degree")
    if src.q > _EMBED_CAP:
        raise DomainError("source field too large for an embedding table")
    key = (src.p, src.k, dst.k)
    emb = _EMB_CACHE.get(key)
    if emb is not None:
        return emb
    if src.k == dst.k:
        table = list(range(src.q))
    else:
        gamma = None
        mod = src.modulus
        for v in dst.lex_vals():
            acc = mod[-1]
            for c in reversed(mod[:-1]):
                acc = dst.addv(dst.mulv(acc, v), c)
            if acc == 0:
                gamma = v
                break
        if gamma is None:
            raise AssertionError("source modulus has no root in the target field")
        powers = [1]
        for _ in range(src.k - 1):
            powers.append(dst.mulv(powers[-1], gamma))
        table = []
        for v in range(src.q):
            acc = 0
            for d, gp in zip(src.digits(v), powers):
                if d:
                    acc = dst.addv(acc, dst.mulv(d % dst.p, gp))
            table.append(acc)
    emb = Embedding(src, dst, table)
    _EMB_CACHE[key] = emb
    return emb
