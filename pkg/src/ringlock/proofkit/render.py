"""Human-readable proof text for verified certificates."""

from __future__ import annotations

from ..fppoly import FpPoly
from ..freering import FreePoly, format_word
from .model import RECORDS, Certificate, Record
from .verify import _load_records, verify_certificate

STYLES = ("terse", "tutorial")

# expansions above this degree are summarised instead of printed
_EXPAND_LIMIT = 16


class RenderRefused(ValueError):
    """Only certificates that verify are rendered."""


def _poly(f: FpPoly, var: str = "T") -> str:
    return f.to_str(var).replace("*", "")


def _signed_sum(parts: list[tuple[int, str]]) -> str:
    out = []
    for i, (c, body) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        piece = body if a == 1 else f"{a}·{body}"
        out.append((("-" if sign == "-" else "") + piece) if i == 0 else f" {sign} {piece}")
    return "".join(out) or "0"


def _paren(s: str) -> str:
    return s if s.replace("^", "").isalnum() else f"({s})"


# -- per kind ----------------------------------------------------------------

def _characteristic(r, tutorial: bool) -> list[str]:
    n = r.n
    prod = "·".join(map(str, r.primes))
    values = [f"{z}^{n}-{z}" for z in r.witnesses]
    lines = []
    if len(values) == 1:
        lines.append(f"{values[0]} = {r.product} = {prod}.")
    else:
        combo = _signed_sum([(c, f"({v})") for c, v in zip(r.coefficients, values) if c])
        if n <= 64:
            lines.append(f"gcd({', '.join(values)}) = {r.product} = {combo}.")
        else:
            lines.append(f"gcd({', '.join(values)}) = {r.product}, an integer combination of these numbers.")
    if tutorial:
        lines.append(f"  since z^{n} = z for every element, each z^{n}-z vanishes in every {n}-ring.")
        lines.append(f"  the primes {', '.join(map(str, r.primes))} are exactly those p with p-1 | {n - 1}.")
    lines.append(f"Hence {prod} = 0 holds in any {n}-ring.")
    return lines


def _reduction(r, tutorial: bool) -> list[str]:
    n, p, q = r.n, r.p, r.target
    g = _poly(r.g)
    parts = [(1, f"{_paren(_poly(u))}·({_paren(_poly(f))}^{n}-{_paren(_poly(f))})")
             for u, f in zip(r.coefficients, r.polys)]
    lines = [f"In GF({p})[T]: {g} = " + " + ".join(b for _, b in parts) + "."]
    if tutorial:
        lines.append(f"  every f(x)^{n}-f(x) vanishes when x^{n} = x, so g(x) = 0 as well.")
    if r.g == r.target_poly():
        lines.append(f"This is T^{q}-T itself.")
    else:
        lines.append(f"T^{q}-T = ({g})·({_poly(r.cofactor)}).")
        if tutorial:
            lines.append(f"  multiplying g(x) = 0 by the cofactor gives x^{q} = x.")
    if all(f.degree * n <= _EXPAND_LIMIT for f in r.polys):
        lines.append("Compactly:")
        for f in r.polys:
            if f == FpPoly.T(p):
                continue  # x = x^n is the hypothesis itself
            fx = _poly(f, "x")
            full = f ** n
            line = f"  {fx} = {_paren(fx)}^{n} = {_poly(full, 'x')}"
            reduced = _reduce_exponents(full, n)
            if reduced != full:
                line += f" = {_poly(reduced, 'x')}"
            lines.append(line)
    lines.append(f"Hence x^{q} = x in every {n}-ring with {p} = 0.")
    return lines


def _reduce_exponents(f: FpPoly, n: int) -> FpPoly:
    # x^e -> x^((e-1) mod (n-1) + 1) for e >= n, valid when x^n = x
    out = [0] * n
    for e, c in enumerate(f.coeffs):
        if e >= n:
            e = (e - 1) % (n - 1) + 1
        out[e] += c
    return FpPoly(f.p, out)


def _crt(r, tutorial: bool) -> list[str]:
    if len(r.primes) == 1:
        return [f"xy - yx = {r.primes[0]}·u_1; a single prime needs no gluing."]
    lines = []
    if tutorial:
        P = r.primes[0]
        for p, (q1, q2) in zip(r.primes[1:], r.steps):
            lines.append(f"  {q1}·{P} + {q2}·{p} = 1")
            P *= p
    w = _signed_sum([(c, f"u_{i + 1}") for i, c in enumerate(r.coefficients) if c])
    lines.append(f"xy - yx = {r.product}·({w}) from xy - yx = p_i·u_i for p_i in {', '.join(map(str, r.primes))}.")
    return lines


def _idempotent(r, tutorial: bool) -> list[str]:
    q = r.q
    field = f"GF({q})" if r.modulus.degree == 1 else f"GF({r.p})[Z]/({_poly(r.modulus, 'Z')})"

    def unit(u: FpPoly) -> str:
        return _poly(u, "Z")

    lines = []
    if r.short_form:
        body = " + ".join(("" if c == FpPoly.const(r.p, 1) else f"{_paren(unit(c))}·")
                          + f"(x-{_paren(unit(u))})^{q - 1}"
                          for c, u in zip(r.short_form, r.units))
        lines.append(f"Over {field}: x = {body}.")
    else:
        lines.append(f"Over {field}: x = 1·(1-(x-1)).")
    if tutorial:
        lines.append(f"  with x^{q} = x each (x-u)^{q - 1} is idempotent, and idempotents are central.")
        lines.append("  so x is a linear combination of central elements.")
    lines.append(f"Hence every {q}-ring with {r.p} = 0 is commutative.")
    return lines


def _eg(r, tutorial: bool) -> list[str]:
    lines = [f"T^{r.p ** r.k}-T = " + "·".join(f"({_poly(g)})" for g in r.S) + f" in GF({r.p})[T]."]
    for g, u, v, e in zip(r.S, r.u, r.v, r.e):
        line = f"e_{{{_poly(g)}}} = {_poly(e)}"
        if tutorial:
            line += f"   from ({_poly(u)})·g + ({_poly(v)})·(product of the others) = 1"
        lines.append(line)
    if tutorial:
        lines.append("  each e_g(a) is idempotent, hence central; they are orthogonal and sum to 1.")
    return lines


def _bivariate_as_word(B) -> str:
    parts = []
    for i, j, c in sorted(B.sorted_terms(), key=lambda t: (-(t[0] + t[1]), t[0])):
        w = format_word(("a",) * i + ("b",) + ("a",) * j).replace("*", "")
        parts.append(w if c == 1 else f"{c}{w}")
    return " + ".join(parts) if parts else "0"


def _bn(r, tutorial: bool) -> list[str]:
    p, k, g = r.p, r.k, _poly(r.g)
    if r.mode == "generalcase":
        rule = "b_{n+1} = a b_n - b_n a - f_n(a) b_n"
    else:
        rule = "b_{n+1} = b_n a - f_n(a) b_n"
    fs = ", ".join(_poly(f) for f in r.enumeration)
    lines = [f"Assume g(a) = 0 for g = {g}; b_0 = b, {rule}, f = {fs}."]
    for n, B in enumerate(r.B[1:], start=1):
        lines.append(f"  b_{n} = {_bivariate_as_word(B)}")
    lines.append(f"So b_{r.m} = 0.")
    if r.obligations:
        ws = ", ".join(f"W_{{{p},{k},{_poly(f)}}}" for f in r.obligations)
        lines.append(f"Given {ws}, this descends to b_1 = 0, so a and b commute.")
    else:
        lines.append("So a and b commute.")
    if tutorial:
        lines.append("  commutative check: B_n = prod (Y - f_i(X)) reduced mod g(X), g(Y) encodes b_n via X^iY^j -> a^i b a^j.")
    return lines


def _free(f: FreePoly) -> str:
    return str(f).replace("*", "")


def _commutator(r, tutorial: bool) -> list[str]:
    ring = "Z" if r.modulus == 0 else f"Z/{r.modulus}"
    lines = [f"In {ring}<X,Y>, with p(f) = f^{r.n} - f:", "XY - YX ="]
    for t in r.terms:
        pieces = []
        if t.g != FreePoly.one(r.modulus):
            pieces.append(f"({_free(t.g)})")
        pieces.append(f"p({_free(t.f)})")
        if t.h != FreePoly.one(r.modulus):
            pieces.append(f"({_free(t.h)})")
        sign = "-" if t.coeff < 0 else "+"
        a = abs(t.coeff)
        lines.append(f"  {sign} {'' if a == 1 else f'{a}·'}{' '.join(pieces)}")
    if tutorial:
        lines.append(f"  every p(f) vanishes when x^{r.n} = x holds identically, so the right side is 0.")
    lines.append(f"Hence every {r.n}-ring is commutative.")
    return lines


def _bracket(i: int, j: int) -> str:
    def pw(v, e):
        return v if e == 1 else f"{v}^{e}"
    return f"[{pw('x', i)} {pw('y', j)}]"


def _p2(r, tutorial: bool) -> list[str]:
    p = r.p
    lines = [
        f"(a) e(x) = x + x^{p} satisfies e^{p} = e, so e(x) is central.",
        "(b) e(x+y) - e(x) - e(y) = " + " + ".join(_bracket(i, p - i) for i in range(1, p)) + ".",
        f"(c) the {p}x{p} Vandermonde matrix over GF({p}) is invertible, so each [x^i y^({p}-i)] is central.",
        f"(d) y·[x y^{p - 1}] = [x y^{p - 1}]·y cancels to y^{p} x = x y^{p}.",
        f"Hence y^{p} and y + y^{p} are central, so y is; every {p * p}-ring with {p} = 0 is commutative.",
    ]
    if tutorial:
        lines.insert(1, "  a p-th power fixed element is a linear combination of idempotents, which are central.")
        lines.insert(4, "  substitute x -> lambda x and invert the Vandermonde system.")
    return lines


_RENDERERS = {
    "Characteristic": _characteristic,
    "Reduction": _reduction,
    "CrtGlue": _crt,
    "IdempotentDecomposition": _idempotent,
    "EgSystem": _eg,
    "Bn": _bn,
    "Commutator": _commutator,
    "P2Trace": _p2,
}


def render_certificate(cert: Certificate | Record | dict | str, style: str = "terse") -> str:
    """Deterministic prose for a certificate; refuses anything that fails verification."""
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    if isinstance(cert, Record):
        cert = cert.to_certificate()
    report = verify_certificate(cert)
    if not report.ok:
        raise RenderRefused(f"refusing to render an unverified certificate: {report.failure}")
    if not isinstance(cert, Certificate):
        cert = Certificate.from_json(cert) if isinstance(cert, str) else Certificate.from_dict(cert)
    _load_records()
    record = RECORDS[cert.kind].from_payload(cert.payload)
    lines = _RENDERERS[cert.kind](record, style == "tutorial")
    return "\n".join(lines) + "\n"
