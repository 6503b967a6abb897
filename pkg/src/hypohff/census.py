"""Census engine: classify factorization outcomes of f_i(g(t)) over all (or
sampled) monic substitutions g, and compare against wreath-product
predictions.

The classification never factors the full composition.  For an irreducible
outer factor u of degree d with root w in E = F_{q^d}, the factorization
type of u(g) over F_q is d times the factorization type of g - w over E
(the tower F_q < E < E(root) gives the bijection between irreducible
factors; this is cross-checked against direct factorization in the test
suite).  Substitution degrees 1-3 get closed-form classifiers over E; the
general case builds the shifted polynomial and factors it.

Enumeration order is lexicographic over the coefficient tuple
(a_1, ..., a_n); parallel runs partition the a_1 axis and merge tallies by
summation, so thread count never changes a reported number.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .ffield import FieldCtx, FieldElem, embedding, make_field
from .polyring import (Poly, compose, fact_type, factor, gcd, is_irreducible,
                       is_separable, monic_polys)
from .wreath import OrbitSetup, predict_density

EXHAUSTIVE_GUARD = 10 ** 8
SAMPLE_PRNG = "python-mt19937"

FactTuple = tuple[int, ...]


@dataclass(frozen=True)
class CensusSpec:
    """What to census: field, substitution degree, outer polynomials, mode.

    `fs` must be monic, separable and pairwise distinct; irreducible too
    unless `raw` is set (raw mode reports histograms with no prediction).
    `targets`, when given, holds one factorization-type partition per f_i;
    the default target is all-irreducible.
    """

    ctx: FieldCtx
    n: int
    fs: tuple[Poly, ...]
    mode: str = "exhaustive"              # "exhaustive" | "sample"
    sample_size: int = 0
    seed: int = 0
    targets: Optional[tuple[FactTuple, ...]] = None
    raw: bool = False


@dataclass
class CensusReport:
    spec: CensusSpec
    total: int
    separable_total: int
    inseparable_total: int
    histogram: dict[tuple[FactTuple, ...], int]
    targets: tuple[FactTuple, ...]
    hits: int
    setup: Optional[OrbitSetup]
    predicted_density: Optional[Fraction]
    deviation: Optional[Fraction]          # hits - density * q^n (extrapolated)
    normalized_deviation: Optional[float]  # deviation / q^(n - 1/2)
    prng: Optional[str] = None


def validate_spec(spec: CensusSpec) -> tuple[Poly, ...]:
    """Check the census preconditions; returns the monicized f_i."""
    if not spec.fs:
        raise DomainError("at least one outer polynomial is required")
    if spec.n < 1:
        raise DomainError("substitution degree must be >= 1")
    fs = []
    for f in spec.fs:
        if f.ctx != spec.ctx:
            raise DomainError("outer polynomial not over the census field")
        if f.is_zero or f.degree == 0:
            raise DomainError("outer polynomials must be nonconstant")
        fs.append(f.monic())
    if len({f.vals for f in fs}) != len(fs):
        raise DomainError("outer polynomials must be pairwise non-associate")
    for f in fs:
        if not is_separable(f):
            raise DomainError("outer polynomials must be separable")
        if not spec.raw and not is_irreducible(f):
            raise DomainError("outer polynomials must be irreducible (or use raw mode)")
    if spec.mode == "exhaustive":
        if spec.ctx.q ** spec.n > EXHAUSTIVE_GUARD:
            raise DomainError(
                f"exhaustive census guarded at q^n <= {EXHAUSTIVE_GUARD}")
    elif spec.mode == "sample":
        if spec.sample_size < 1:
            raise DomainError("sample mode needs a positive sample size")
    else:
        raise DomainError(f"unknown census mode {spec.mode!r}")
    if spec.targets is not None:
        if len(spec.targets) != len(fs):
            raise DomainError("one target partition per outer polynomial is required")
        for t, f in zip(spec.targets, fs):
            if sum(t) != spec.n * f.degree or any(x < 1 for x in t):
                raise DomainError(
                    f"target partition {t} does not sum to n*deg f = {spec.n * f.degree}")
    return tuple(fs)


def derive_setup(spec: CensusSpec) -> OrbitSetup:
    """Orbit setup of the Frobenius wreath model: one orbit per f_i, of size
    deg f_i.  Requires irreducible f_i."""
    fs = validate_spec(spec)
    for f in fs:
        if not is_irreducible(f):
            raise DomainError("setup derivation requires irreducible outer polynomials")
    return OrbitSetup(spec.n, tuple(f.degree for f in fs))


# ---------------------------------------------------------------------------
# per-outer-factor classifiers
#
# Each classifier maps the coefficient tuple (a_1, ..., a_n) of
# g = t^n + a_1 t^{n-1} + ... + a_n  (packed base-field values) to the
# factorization type of u(g) over F_q, or None when u(g) is inseparable.


def _shift_root(u: Poly):
    """(E, table F_q -> E, w): w is the lex-least root of u in E = F_{q^d}."""
    ctx = u.ctx
    d = u.degree
    ext = make_field(ctx.p, ctx.k * d)
    emb = embedding(ctx, ext)
    if d == 1:
        w = ext.negv(emb.table[u.monic().vals[0]])
        return ext, emb.table, w
    u_ext = Poly(ext, [emb.table[v] for v in u.monic().vals])
    from .polyring import equal_degree, _derived_rng
    roots = []
    for lin in equal_degree(u_ext, 1, _derived_rng(0, u_ext)):
        roots.append(ext.negv(lin.monic().vals[0]))
    roots.sort(key=ext.digits)
    return ext, emb.table, roots[0]


def _build_classifier(u: Poly, n: int):
    """Classifier closure for one irreducible outer factor u."""
    d = u.degree
    ext, table, w = _shift_root(u)
    scale = d

    if n == 1:
        out = (scale,)

        def cls1(avals):
            return out
        return cls1

    if ext.p == 2:
        return _classifier_char2(ext, table, w, n, scale)
    if ext.k == 1:
        return _classifier_odd_prime(ext, table, w, n, scale)
    return _classifier_generic(ext, table, w, n, scale)


def _classifier_char2(ext: FieldCtx, table, w, n: int, scale: int):
    q = ext.q
    if ext.k == 1:  # F_2 itself: trivial tables
        tr = [0, 1]
        sq = [0, 1]
        invsq = [0, 1]

        def mulv(a, b):
            return a & b
    else:
        ext._ensure_tables()
        exp, log = ext._exp, ext._log
        qm1 = q - 1
        if ext._tr is None:
            ext._build_trace_table()
        tr = ext._tr
        sq = [0] * q
        invsq = [0] * q
        for a in range(1, q):
            sq[a] = exp[log[a] * 2 % qm1]
            invsq[a] = exp[(-2 * log[a]) % qm1]

        def mulv(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

    if n == 2:
        split = (scale, scale)
        inert = (2 * scale,)

        def cls2(avals):
            b = table[avals[0]]
            if b == 0:
                return None
            c = table[avals[1]] ^ w
            return split if tr[mulv(c, invsq[b])] == 0 else inert
        return cls2

    if n == 3:
        t111 = (scale, scale, scale)
        t12 = (scale, 2 * scale)
        t3 = (3 * scale,)
        nbits = q.bit_length() - 1  # q = 2^e, e squarings take t to t^q

        def cls3(avals):
            b = table[avals[0]]
            c = table[avals[1]]
            dd = table[avals[2]] ^ w
            # disc of t^3 + b t^2 + c t + dd in char 2 is (bc + dd)^2
            m1 = mulv(b, c) ^ dd
            if m1 == 0:
                return None
            # t^3 = b t^2 + c t + dd;  t^4 = (b^2+c) t^2 + (bc+dd) t + b dd
            m2a = sq[b] ^ c
            m2b = m1
            m2c = mulv(b, dd)
            r2, r1, r0 = 0, 1, 0  # residue t; q squarings give t^q mod g
            for _ in range(nbits):
                s2, s1, s0 = sq[r2], sq[r1], sq[r0]
                # (r2 t^2 + r1 t + r0)^2 = s2 t^4 + s1 t^2 + s0
                r2 = mulv(s2, m2a) ^ s1
                r1 = mulv(s2, m2b)
                r0 = mulv(s2, m2c) ^ s0
            u1 = r1 ^ 1
            if r2 == 0 and u1 == 0 and r0 == 0:
                return t111
            degg = _gcd3_degree(ext, (dd, c, b, 1), (r0, u1, r2))
            return t12 if degg == 1 else t3
        return cls3

    return _classifier_generic(ext, table, w, n, scale)


def _classifier_odd_prime(ext: FieldCtx, table, w, n: int, scale: int):
    p = ext.p
    wneg = (p - w) % p

    if n == 2:
        split = (scale, scale)
        inert = (2 * scale,)
        euler = (p - 1) // 2
        qr = [0] * p
        for a in range(1, p):
            qr[a] = 1 if pow(a, euler, p) == 1 else -1

        def cls2(avals):
            b = avals[0]
            disc = (b * b - 4 * (avals[1] + wneg)) % p
            if disc == 0:
                return None
            return split if qr[disc] == 1 else inert
        return cls2

    if n == 3:
        t111 = (scale, scale, scale)
        t12 = (scale, 2 * scale)
        t3 = (3 * scale,)
        pbits = [int(x) for x in bin(p)[3:]]  # exponent bits after the top one

        def cls3(avals):
            b = avals[0]
            c = avals[1]
            dd = (avals[2] + wneg) % p
            disc = (18 * b * c * dd - 4 * b * b * b * dd + b * b * c * c
                    - 4 * c * c * c - 27 * dd * dd) % p
            if disc == 0:
                return None
            # t^3 = -(b t^2 + c t + dd); t^4 = (b^2 - c) t^2 + (b c - dd) t + b dd
            m2a = (b * b - c) % p
            m2b = (b * c - dd) % p
            m2c = b * dd % p
            nb = (p - b) % p
            nc = (p - c) % p
            nd = (p - dd) % p
            r2, r1, r0 = 0, 1, 0  # t; top exponent bit already consumed
            for bit in pbits:
                # square the residue
                s4 = r2 * r2 % p
                s3 = 2 * r2 * r1 % p
                s2 = (r1 * r1 + 2 * r2 * r0) % p
                s1 = 2 * r1 * r0 % p
                s0 = r0 * r0 % p
                r2 = (s2 + s4 * m2a + s3 * nb) % p
                r1 = (s1 + s4 * m2b + s3 * nc) % p
                r0 = (s0 + s4 * m2c + s3 * nd) % p
                if bit:
                    # multiply by t and reduce
                    r2, r1, r0 = ((r1 + r2 * nb) % p, (r0 + r2 * nc) % p,
                                  r2 * nd % p)
            u1 = (r1 - 1) % p
            if r2 == 0 and u1 == 0 and r0 == 0:
                return t111
            degg = _gcd3_degree(ext, (dd, c, b, 1), (r0, u1, r2))
            return t12 if degg == 1 else t3
        return cls3

    return _classifier_generic(ext, table, w, n, scale)


def _gcd3_degree(ext: FieldCtx, gvals, uvals) -> int:
    """deg gcd(g, u) for cubic g and nonzero u of degree <= 2."""
    a = list(gvals)
    b = list(uvals)
    while b and b[-1] == 0:
        b.pop()
    addv, mulv, invv, negv = ext.addv, ext.mulv, ext.invv, ext.negv
    while b:
        db = len(b) - 1
        inv = invv(b[-1])
        while a and len(a) - 1 >= db:
            c = mulv(a[-1], inv)
            if c:
                off = len(a) - 1 - db
                for j in range(db):
                    a[off + j] = addv(a[off + j], negv(mulv(c, b[j])))
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _classifier_generic(ext: FieldCtx, table, w, n: int, scale: int):
    wneg = ext.negv(w)

    def clsgen(avals):
        vals = [0] * (n + 1)
        vals[n] = 1
        for i, a in enumerate(avals):
            vals[n - 1 - i] = table[a]
        vals[0] = ext.addv(vals[0], wneg)
        g = Poly(ext, vals)
        if not is_separable(g):
            return None
        return tuple(scale * part for part in fact_type(g))
    return clsgen


def _fact_classifiers(spec: CensusSpec, fs: tuple[Poly, ...]):
    """One classification pipeline per f_i: its irreducible factors'
    classifiers, combined by multiset union."""
    pipes = []
    for f in fs:
        if spec.raw:
            _, irr = factor(f)
            subs = [u for u, _ in irr]
        else:
            subs = [f]
        pipes.append([_build_classifier(u, spec.n) for u in subs])
    return pipes


def _classify_tuple(pipes, avals):
    """Tuple of factorization types of the f_i(g), or None if inseparable."""
    out = []
    for pipe in pipes:
        if len(pipe) == 1:
            t = pipe[0](avals)
            if t is None:
                return None
        else:
            parts = []
            for cls in pipe:
                sub = cls(avals)
                if sub is None:
                    return None
                parts.extend(sub)
            t = tuple(sorted(parts))
        out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# main entry points


def _default_targets(spec: CensusSpec, fs) -> tuple[FactTuple, ...]:
    if spec.targets is not None:
        return tuple(tuple(sorted(t)) for t in spec.targets)
    return tuple((spec.n * f.degree,) for f in fs)


def _census_chunk(spec: CensusSpec, first_vals: list[int]) -> tuple[dict, int]:
    fs = validate_spec(spec)
    pipes = _fact_classifiers(spec, fs)
    order = spec.ctx.lex_vals()
    hist: dict = {}
    insep = 0
    n = spec.n
    if n == 1:
        for a1 in first_vals:
            t = _classify_tuple(pipes, (a1,))
            if t is None:
                insep += 1
            else:
                hist[t] = hist.get(t, 0) + 1
        return hist, insep
    for a1 in first_vals:
        for rest in itertools.product(order, repeat=n - 1):
            t = _classify_tuple(pipes, (a1,) + rest)
            if t is None:
                insep += 1
            else:
                hist[t] = hist.get(t, 0) + 1
    return hist, insep


def _sample_chunk(spec: CensusSpec, tuples: list[tuple]) -> tuple[dict, int]:
    fs = validate_spec(spec)
    pipes = _fact_classifiers(spec, fs)
    hist: dict = {}
    insep = 0
    for avals in tuples:
        t = _classify_tuple(pipes, avals)
        if t is None:
            insep += 1
        else:
            hist[t] = hist.get(t, 0) + 1
    return hist, insep


def _merge(parts):
    hist: dict = {}
    insep = 0
    for h, i in parts:
        insep += i
        for k, v in h.items():
            hist[k] = hist.get(k, 0) + v
    return hist, insep


def _run_parallel(worker, spec, chunks, threads):
    if threads <= 1 or len(chunks) <= 1:
        return _merge(worker(spec, chunk) for chunk in chunks)
    import multiprocessing
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=threads) as pool:
        parts = pool.starmap(worker, [(spec, chunk) for chunk in chunks])
    return _merge(parts)


def run_census(spec: CensusSpec, threads: int = 1) -> CensusReport:
    """Run the census described by `spec`; deterministic for fixed seed,
    independent of `threads`."""
    fs = validate_spec(spec)
    targets = _default_targets(spec, fs)
    q, n = spec.ctx.q, spec.n

    if spec.mode == "exhaustive":
        total = q ** n
        order = spec.ctx.lex_vals()
        nchunks = min(max(threads, 1), len(order))
        bounds = [round(i * len(order) / nchunks) for i in range(nchunks + 1)]
        chunks = [order[bounds[i]:bounds[i + 1]] for i in range(nchunks)]
        hist, insep = _run_parallel(_census_chunk, spec, chunks, threads)
        prng = None
    else:
        total = spec.sample_size
        rng = random.Random(spec.seed)
        order = spec.ctx.lex_vals()
        draws = [tuple(order[rng.randrange(q)] for _ in range(n))
                 for _ in range(total)]
        nchunks = min(max(threads, 1), max(len(draws), 1))
        bounds = [round(i * len(draws) / nchunks) for i in range(nchunks + 1)]
        chunks = [draws[bounds[i]:bounds[i + 1]] for i in range(nchunks)]
        hist, insep = _run_parallel(_sample_chunk, spec, chunks, threads)
        prng = SAMPLE_PRNG

    separable_total = total - insep
    hits = hist.get(targets, 0)

    setup = None
    density = None
    deviation = None
    normalized = None
    if not spec.raw:
        setup = OrbitSetup(n, tuple(f.degree for f in fs))
        per_orbit = targets
        density = predict_density(setup, targets=per_orbit)
        # extrapolate sampled hits to the full space before comparing
        est_hits = Fraction(hits) if spec.mode == "exhaustive" else \
            Fraction(hits * q ** n, total)
        deviation = est_hits - density * q ** n
        normalized = float(deviation) / (q ** n / q ** 0.5)

    return CensusReport(
        spec=spec, total=total, separable_total=separable_total,
        inseparable_total=insep, histogram=hist, targets=targets, hits=hits,
        setup=setup, predicted_density=density, deviation=deviation,
        normalized_deviation=normalized, prng=prng)


def type_census(spec: CensusSpec, threads: int = 1) -> CensusReport:
    """Census against explicit per-f factorization-type targets."""
    if spec.targets is None:
        raise DomainError("type census requires explicit targets")
    return run_census(spec, threads)


# ---------------------------------------------------------------------------
# dedicated modes


@dataclass
class SwanReport:
    degree_bound: int
    candidates: int
    counterexamples: list
    reducible: int


def swan_mode(degree_bound: int) -> SwanReport:
    """Check that g(t)^8 + t^3 over F_2 is reducible for every monic g with
    1 <= deg g <= degree_bound; counterexamples are reported (expected none)."""
    if degree_bound < 1:
        raise DomainError("degree bound must be >= 1")
    ctx = make_field(2, 1)
    t3 = Poly(ctx, (0, 0, 0, 1))
    report = SwanReport(degree_bound, 0, [], 0)
    for deg in range(1, degree_bound + 1):
        for g in monic_polys(ctx, deg):
            h = compose(Poly(ctx, (0,) * 8 + (1,)), g) + t3
            report.candidates += 1
            if is_irreducible(h):
                report.counterexamples.append(g.vals)
            else:
                report.reducible += 1
    return report


@dataclass
class CorrReport:
    omegas: list
    total: int
    joint: dict              # bitvector of per-shift irreducibility -> count
    all_irreducible: int
    independence_prediction: Fraction
    relative_deviation: float
    even_sum_ok: bool
    marginals: list


def correlation_mode(ctx: FieldCtx, omegas) -> CorrReport:
    """Exhaustive monic quadratic census of joint irreducibility of the
    g - w for w in the shift set, against the 2^-|set| independence model."""
    if ctx.p != 2:
        raise DomainError("correlation mode lives in characteristic 2")
    omegas = [ctx.elem(w) if isinstance(w, int) else w for w in omegas]
    for w in omegas:
        if w.ctx != ctx:
            raise DomainError("shift element not in the census field")
    from .discclass import even_sum_criterion
    ok = even_sum_criterion(omegas)
    wvals = [w.val for w in omegas]
    m = len(wvals)
    q = ctx.q
    ext = ctx
    ext._ensure_tables()
    if ext._tr is None:
        ext._build_trace_table()
    tr = ext._tr
    exp, log = ext._exp, ext._log
    qm1 = q - 1
    invsq = [0] * q
    for a in range(1, q):
        invsq[a] = exp[(-2 * log[a]) % qm1]
    joint: dict[int, int] = {}
    for b in range(q):
        for c in range(q):
            bits = 0
            if b != 0:
                u = invsq[b]
                for i, wv in enumerate(wvals):
                    x = (c ^ wv)
                    if x:
                        x = exp[log[x] + log[u]]
                    if tr[x] == 1:
                        bits |= 1 << i
            joint[bits] = joint.get(bits, 0) + 1
    allbits = (1 << m) - 1
    all_irr = joint.get(allbits, 0)
    pred = Fraction(q * q, 2 ** m)
    rel = abs(all_irr - pred) / pred
    marginals = []
    for i in range(m):
        marginals.append(sum(v for k, v in joint.items() if k >> i & 1))
    return CorrReport(
        omegas=[w.coeffs for w in omegas], total=q * q, joint=joint,
        all_irreducible=all_irr, independence_prediction=pred,
        relative_deviation=float(rel), even_sum_ok=ok, marginals=marginals)
