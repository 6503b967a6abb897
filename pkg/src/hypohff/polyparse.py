"""Human-writable polynomial literals over the active field.

Grammar (variable X by default, T for polynomials over F_q[T]):

    poly  := [sign] term (sign term)*
    term  := factor ('*' factor)*
    factor:= INT | 'g' ['^' INT] | VAR ['^' INT]

Prime-field coefficients print as integers; extension-field coefficients
print as powers g^i of the canonical generator g.  Printing is canonical,
so parse(print(f)) == f.
"""
from __future__ import annotations

import re

from .errors import DomainError
from .ffield import FieldCtx, FieldElem
from .polyring import Poly

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]|\^|\*|\+|\-)")


def _tokenize(s: str):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or not m.group(1):
            raise DomainError(f"cannot parse polynomial near {s[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_elem(s: str, ctx: FieldCtx) -> FieldElem:
    """A single field-element literal: INT, g, or g^i."""
    f = parse_poly(s, ctx, var="X")
    if f.is_zero:
        return ctx.zero
    if f.degree != 0:
        raise DomainError(f"{s!r} is not a field-element literal")
    return f.coeff(0)


def parse_poly(s: str, ctx: FieldCtx, var: str = "X") -> Poly:
    tokens = _tokenize(s)
    if not tokens:
        raise DomainError("empty polynomial literal")
    coeffs: dict[int, int] = {}
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise DomainError("dangling sign in polynomial literal")
        coeff = ctx.one
        degree = 0
        saw_factor = False
        while i < len(tokens) and tokens[i] not in "+-":
            t = tokens[i]
            if t == "*":
                i += 1
                continue
            exp = 1
            step = 1
            if i + 1 < len(tokens) and tokens[i + 1] == "^":
                if i + 2 >= len(tokens) or not tokens[i + 2].isdigit():
                    raise DomainError("dangling '^' in polynomial literal")
                exp = int(tokens[i + 2])
                step = 3
            if t.isdigit():
                coeff = coeff * ctx.elem(int(t)) ** exp
            elif t == "g":
                if ctx.k == 1:
                    raise DomainError("generator literal 'g' needs an extension field")
                coeff = coeff * ctx.gen ** exp
            elif t == var:
                degree += exp
            else:
                raise DomainError(f"unexpected token {t!r} in polynomial literal")
            saw_factor = True
            i += step
        if not saw_factor:
            raise DomainError("empty term in polynomial literal")
        if sign < 0:
            coeff = -coeff
        coeffs[degree] = ctx.addv(coeffs.get(degree, 0), coeff.val)
    top = max(coeffs)
    return Poly(ctx, [coeffs.get(d, 0) for d in range(top + 1)])


def format_elem(a: FieldElem) -> str:
    ctx = a.ctx
    if ctx.k == 1:
        return str(a.val)
    if a.val == 0:
        return "0"
    if a.val == 1:
        return "1"
    ctx._ensure_tables()
    e = ctx._log[a.val]
    return "g" if e == 1 else f"g^{e}"


def format_poly(f: Poly, var: str = "X") -> str:
    """Canonical rendering, highest degree first."""
    if f.is_zero:
        return "0"
    parts = []
    for d in range(f.degree, -1, -1):
        v = f.vals[d]
        if not v:
            continue
        c = format_elem(f.coeff(d))
        if d == 0:
            parts.append(c)
        else:
            xpow = var if d == 1 else f"{var}^{d}"
            parts.append(xpow if c == "1" else f"{c}*{xpow}")
    return " + ".join(parts)
