"""Small builders shared by the algebra tests."""

import re

from grassindex.monomials import mono_mul
from grassindex.wreath import WreathContext, WreathElement, q_of

_TERM = re.compile(r"^(?:P\(w(\d+)\))?(?:t(?:\^(\d+))?)?$")


def w_mono(ctx: WreathContext, i: int):
    m = ctx.w(i)
    assert m is not None, f"w{i} is not in this context"
    return m


def term(ctx: WreathContext, text: str) -> WreathElement:
    """Parse one written term: ``t^4``, ``P(w2)``, ``P(w3)t^2``, ``Q(w0|w2)``, ``1``."""
    text = text.replace(" ", "")
    if text == "1":
        return WreathElement.unit(ctx)
    q = re.fullmatch(r"Q\(w(\d+)\|w(\d+)\)", text)
    if q:
        return q_of(w_mono(ctx, int(q.group(1))), w_mono(ctx, int(q.group(2))), ctx)
    m = _TERM.fullmatch(text)
    assert m and text, f"cannot parse {text!r}"
    mono = w_mono(ctx, int(m.group(1))) if m.group(1) else ctx.one
    if m.group(2):
        power = int(m.group(2))
    else:
        power = 1 if text.endswith("t") else 0
    return WreathElement.tp(ctx, power, mono)


def element(ctx: WreathContext, text: str) -> WreathElement:
    out = WreathElement.zero(ctx)
    for part in text.split("+"):
        out = out + term(ctx, part)
    return out


def monomial(ctx: WreathContext, *indices: int):
    m = ctx.one
    for i in indices:
        m = mono_mul(m, w_mono(ctx, i))
    return m
