"""Permutational wreath products S_n wr G for cyclic G.

Elements are pairs (zeta, sigma): zeta assigns a degree-n permutation to
each column position, sigma permutes the columns.  The action on pairs
(k, column) is (zeta(sigma.col).k, sigma.col); the group law is pinned by
compatibility with that action.

`OrbitSetup` fixes the column set as consecutive blocks, sigma cycling each
block, which is the shape Frobenius produces on the roots of a family of
irreducible polynomials.  The counting operations enumerate the full
zeta-space and are the prediction side of the census.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError

ENUM_GUARD = 10 ** 8

Perm = tuple[int, ...]


def identity_perm(m: int) -> Perm:
    return tuple(range(m))


def perm_mul(a: Perm, b: Perm) -> Perm:
    """Composition a after b: (a*b)(x) = a[b[x]]."""
    return tuple(a[x] for x in b)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def check_perm(a, m: int) -> Perm:
    t = tuple(a)
    if sorted(t) != list(range(m)):
        raise DomainError(f"not a permutation of {m} points: {a!r}")
    return t


def cycle_type(a: Perm) -> tuple[int, ...]:
    seen = [False] * len(a)
    parts = []
    for i in range(len(a)):
        if not seen[i]:
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                ln += 1
            parts.append(ln)
    return tuple(sorted(parts))


def is_full_cycle(a: Perm) -> bool:
    return cycle_type(a) == (len(a),)


def all_perms(n: int) -> list[Perm]:
    return list(itertools.permutations(range(n)))


@dataclass(frozen=True)
class OrbitSetup:
    """Inner degree n and column blocks; sigma cycles each block in order."""

    n: int
    orbit_sizes: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("inner degree must be >= 1")
        object.__setattr__(self, "orbit_sizes", tuple(self.orbit_sizes))
        if not self.orbit_sizes or any(s < 1 for s in self.orbit_sizes):
            raise DomainError("orbit sizes must be positive")

    @property
    def nu(self) -> int:
        return sum(self.orbit_sizes)

    @property
    def r(self) -> int:
        return len(self.orbit_sizes)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = []
        start = 0
        for s in self.orbit_sizes:
            out.append(tuple(range(start, start + s)))
            start += s
        return tuple(out)

    @property
    def sigma(self) -> Perm:
        img = [0] * self.nu
        for block in self.blocks:
            for idx, pos in enumerate(block):
                img[pos] = block[(idx + 1) % len(block)]
        return tuple(img)

    def zeta_space(self) -> int:
        import math
        return math.factorial(self.n) ** self.nu

    def check_guard(self):
        if self.zeta_space() > ENUM_GUARD:
            raise DomainError(
                f"enumeration guard exceeded: (n!)^nu = {self.zeta_space()} > {ENUM_GUARD}")


@dataclass(frozen=True)
class WreathElem:
    """zeta . sigma, with zeta a tuple of inner permutations per column."""

    zeta: tuple[Perm, ...]
    sigma: Perm


def make_elem(zeta, sigma) -> WreathElem:
    zt = tuple(tuple(z) for z in zeta)
    if not zt:
        raise DomainError("zeta must cover at least one column")
    n = len(zt[0])
    for z in zt:
        check_perm(z, n)
    sg = check_perm(sigma, len(zt))
    return WreathElem(zt, sg)


def wreath_identity(n: int, nu: int) -> WreathElem:
    return WreathElem(tuple(identity_perm(n) for _ in range(nu)), identity_perm(nu))


def act(w: WreathElem, point: tuple[int, int]) -> tuple[int, int]:
    """(k, col) -> (zeta(sigma.col).k, sigma.col)."""
    k, om = point
    n = len(w.zeta[0])
    if not (0 <= k < n and 0 <= om < len(w.sigma)):
        raise DomainError("point out of range")
    om2 = w.sigma[om]
    return (w.zeta[om2][k], om2)


def mul(w1: WreathElem, w2: WreathElem) -> WreathElem:
    """Group law, pinned by act(mul(a, b), x) == act(a, act(b, x))."""
    if len(w1.sigma) != len(w2.sigma) or len(w1.zeta[0]) != len(w2.zeta[0]):
        raise DomainError("wreath setup mismatch")
    inv1 = perm_inv(w1.sigma)
    zeta = tuple(perm_mul(w1.zeta[om], w2.zeta[inv1[om]])
                 for om in range(len(w1.sigma)))
    return WreathElem(zeta, perm_mul(w1.sigma, w2.sigma))


def inv(w: WreathElem) -> WreathElem:
    sig_i = perm_inv(w.sigma)
    zeta = tuple(perm_inv(w.zeta[w.sigma[om]]) for om in range(len(w.sigma)))
    return WreathElem(zeta, sig_i)


def is_column_transitive(w: WreathElem, setup: OrbitSetup) -> bool:
    """Whether <w> acts transitively on [n] x block, for every block.

    Direct single-orbit walk: the cyclic orbit of (0, block start) must
    exhaust all n * |block| points.
    """
    if w.sigma != setup.sigma:
        raise DomainError("element's sigma is inconsistent with the setup")
    n = setup.n
    zeta = w.zeta
    for block in setup.blocks:
        size = len(block)
        target = n * size
        k = 0
        i = 0
        steps = 0
        while True:
            i += 1
            if i == size:
                i = 0
            k = zeta[block[i]][k]
            steps += 1
            if k == 0 and i == 0:
                break
        if steps != target:
            return False
    return True


def orbit_types(w: WreathElem, setup: OrbitSetup) -> tuple[tuple[int, ...], ...]:
    """Per-block partition of n*|block| into <w>-orbit lengths."""
    if w.sigma != setup.sigma:
        raise DomainError("element's sigma is inconsistent with the setup")
    n = setup.n
    out = []
    for block in setup.blocks:
        size = len(block)
        seen = [[False] * size for _ in range(n)]
        parts = []
        for k0 in range(n):
            for i0 in range(size):
                if seen[k0][i0]:
                    continue
                ln = 0
                k, i = k0, i0
                while not seen[k][i]:
                    seen[k][i] = True
                    i = (i + 1) % size
                    k = w.zeta[block[i]][k]
                    ln += 1
                parts.append(ln)
        out.append(tuple(sorted(parts)))
    return tuple(out)


def _transitive_assignments(n: int, block_size: int) -> tuple[list[tuple[int, ...]], int]:
    """All per-block zeta index assignments making the block transitive."""
    perms = all_perms(n)
    good = []
    for assign in itertools.product(range(len(perms)), repeat=block_size):
        target = n * block_size
        k = 0
        i = 0
        steps = 0
        while True:
            i += 1
            if i == block_size:
                i = 0
            k = perms[assign[i]][k]
            steps += 1
            if k == 0 and i == 0:
                break
        if steps == target:
            good.append(assign)
    return good, len(perms)


def count_transitive(setup: OrbitSetup) -> int:
    """Exact count of zeta with zeta.sigma column-transitive, by full
    enumeration of the zeta-space."""
    setup.check_guard()
    n = setup.n
    perms = all_perms(n)
    nperm = len(perms)
    blocks = setup.blocks
    total = 0
    for zvals in itertools.product(range(nperm), repeat=setup.nu):
        ok = True
        for block in blocks:
            size = len(block)
            target = n * size
            k = 0
            i = 0
            steps = 0
            while True:
                i += 1
                if i == size:
                    i = 0
                k = perms[zvals[block[i]]][k]
                steps += 1
                if k == 0 and i == 0:
                    break
            if steps != target:
                ok = False
                break
        if ok:
            total += 1
    return total


def transitive_set(setup: OrbitSetup) -> list[tuple[int, ...]]:
    """The set T as zeta index tuples (product of per-block assignments)."""
    setup.check_guard()
    per_block = [_transitive_assignments(setup.n, len(b))[0] for b in setup.blocks]
    out = []
    for combo in itertools.product(*per_block):
        flat = []
        for part in combo:
            flat.extend(part)
        out.append(tuple(flat))
    return out


def conjugation_orbit_on_T(setup: OrbitSetup) -> int:
    """Number of orbits of the zeta-group conjugation action on T."""
    setup.check_guard()
    n = setup.n
    perms = all_perms(n)
    nperm = len(perms)
    pidx = {p: i for i, p in enumerate(perms)}
    pmul = [[pidx[perm_mul(perms[i], perms[j])] for j in range(nperm)]
            for i in range(nperm)]
    pinv = [pidx[perm_inv(p)] for p in perms]
    # generators of S_n at every column position
    gens = []
    if n >= 2:
        gens.append(pidx[tuple([1, 0] + list(range(2, n)))])
        gens.append(pidx[tuple(list(range(1, n)) + [0])])
    sigma = setup.sigma
    nu = setup.nu
    T = transitive_set(setup)
    if not T or n < 2:
        return 1 if T else 0
    remaining = set(T)
    orbits = 0
    while remaining:
        orbits += 1
        seed = remaining.pop()
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for j in range(nu):
                sj = sigma[j]
                for s in gens:
                    # conjugate by xi supported at column j:
                    # zeta'(j) = s^-1 * zeta(j) [* s if sigma(j) == j],
                    # zeta'(sigma j) = zeta(sigma j) * s  otherwise
                    nz = list(cur)
                    si = pinv[s]
                    if sj == j:
                        nz[j] = pmul[si][pmul[cur[j]][s]]
                    else:
                        nz[j] = pmul[si][cur[j]]
                        nz[sj] = pmul[cur[sj]][s]
                    cand = tuple(nz)
                    if cand in remaining:
                        remaining.remove(cand)
                        frontier.append(cand)
    return orbits


def predict_density(setup: OrbitSetup, targets=None) -> Fraction:
    """Fraction of zeta whose element zeta.sigma has the target orbit type
    on every block; all-transitive when targets is None."""
    setup.check_guard()
    n = setup.n
    if targets is None:
        targets = tuple((n * len(b),) for b in setup.blocks)
    targets = tuple(tuple(sorted(t)) for t in targets)
    if len(targets) != setup.r:
        raise DomainError("one target partition per orbit is required")
    for t, block in zip(targets, setup.blocks):
        if sum(t) != n * len(block) or any(x < 1 for x in t):
            raise DomainError(
                f"target partition {t} does not sum to n*|orbit| = {n * len(block)}")
    perms = all_perms(n)
    sigma = setup.sigma
    # per-block densities multiply: zeta coordinates are independent
    dens = Fraction(1)
    for t, block in zip(targets, setup.blocks):
        size = len(block)
        hits = 0
        total = 0
        for assign in itertools.product(range(len(perms)), repeat=size):
            total += 1
            seen = [[False] * size for _ in range(n)]
            parts = []
            for k0 in range(n):
                for i0 in range(size):
                    if seen[k0][i0]:
                        continue
                    ln = 0
                    k, i = k0, i0
                    while not seen[k][i]:
                        seen[k][i] = True
                        i = (i + 1) % size
                        k = perms[assign[i]][k]
                        ln += 1
                    parts.append(ln)
            if tuple(sorted(parts)) == t:
                hits += 1
        dens *= Fraction(hits, total)
    return dens


def lemma_sweep(max_n: int, max_nu: int, guard: int = 10 ** 6) -> list[dict]:
    """Verify |T| = (n!)^nu / n^r and single conjugation orbit for every
    setup within the guard; returns one record per setup."""
    import math
    records = []
    for n in range(1, max_n + 1):
        for nu in range(1, max_nu + 1):
            if math.factorial(n) ** nu > guard:
                continue
            for sizes in _partitions(nu):
                setup = OrbitSetup(n, sizes)
                count = count_transitive(setup)
                formula = math.factorial(n) ** nu // n ** setup.r
                orbits = conjugation_orbit_on_T(setup)
                records.append({
                    "n": n, "orbit_sizes": list(sizes), "nu": nu, "r": setup.r,
                    "count": count, "formula": formula,
                    "count_matches": count == formula,
                    "conjugation_orbits": orbits,
                })
    return records


def _partitions(n: int, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest
