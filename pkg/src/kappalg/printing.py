"""Canonical exact rendering of elements and series.

Terms are emitted in a fixed order (total word length, then leg words
lexicographically), so equal values always print byte-identically and
every printed form re-parses to the same value.
"""

from __future__ import annotations

from kappalg.scalars import GaussianRational


def scalar_str(c: GaussianRational) -> str:
    return c.exact_str()


def _word_str(pres, word) -> str:
    if not word:
        return "1"
    parts = []
    k = 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        name = pres.gens[word[k]].name
        parts.append(name if j - k == 1 else "%s^%d" % (name, j - k))
        k = j
    return "*".join(parts)


def _coeff_prefix(c: GaussianRational):
    """Split a coefficient into (sign, factor-string); "" factor means 1."""
    neg = (c.re < 0) or (c.re == 0 and c.im < 0)
    if neg:
        c = -c
    if c.re and c.im:
        factor = "(%s%s%s*i)" % (
            c.re,
            "+" if c.im > 0 else "-",
            "" if abs(c.im) == 1 else "%s" % abs(c.im),
        )
        # normalize "(a+*i)" from |im| == 1
        factor = factor.replace("+*", "+").replace("-*", "-")
    elif c.im:
        factor = "i" if c.im == 1 else "%s*i" % c.im
    else:
        factor = "" if c.re == 1 else str(c.re)
    return neg, factor


def _term_str(pres, key, coeff, tensor: bool) -> str:
    if tensor:
        mono = " # ".join(_word_str(pres, w) for w in key)
        trivial = all(not w for w in key)
    else:
        mono = _word_str(pres, key)
        trivial = not key
    neg, factor = _coeff_prefix(coeff)
    if trivial:
        body = factor if factor else "1"
    elif factor:
        body = "%s*%s" % (factor, mono)
    else:
        body = mono
    return neg, body


def _sorted_terms(value):
    if hasattr(value, "legs"):
        return sorted(
            value.terms.items(), key=lambda kv: (sum(len(w) for w in kv[0]), kv[0])
        )
    return sorted(value.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))


def element_str(value) -> str:
    """Canonical rendering of an AlgebraElement or TensorElement."""
    items = _sorted_terms(value)
    if not items:
        return "0"
    tensor = hasattr(value, "legs")
    out = []
    for key, coeff in items:
        neg, body = _term_str(value.pres, key, coeff, tensor)
        if not out:
            out.append("-%s" % body if neg else body)
        else:
            out.append("- %s" % body if neg else "+ %s" % body)
    return " ".join(out)


def series_str(series) -> str:
    """Canonical rendering of a deformation series with its O(L^k) marker."""
    chunks = []
    for n in sorted(series.coeffs):
        coeff = series.coeffs[n]
        if coeff.is_zero():
            continue
        body = element_str(coeff)
        if n == 0:
            chunks.append(body)
        else:
            lam = "L" if n == 1 else "L^%d" % n
            chunks.append("%s*(%s)" % (lam, body))
    if not chunks:
        chunks.append("0")
    text = " + ".join(chunks)
    if series.trunc is not None:
        text += " + O(L^%d)" % (series.trunc + 1)
    return text


def terms_payload(value) -> list:
    """JSON-ready list of terms with exact coefficient strings."""
    out = []
    tensor = hasattr(value, "legs")
    for key, coeff in _sorted_terms(value):
        if tensor:
            legs = [[value.pres.gens[k].name for k in w] for w in key]
            out.append({"legs": legs, "coeff": scalar_str(coeff)})
        else:
            word = [value.pres.gens[k].name for k in key]
            out.append({"word": word, "coeff": scalar_str(coeff)})
    return out


def series_payload(series) -> dict:
    orders = {}
    for n in sorted(series.coeffs):
        coeff = series.coeffs[n]
        if not coeff.is_zero():
            orders[str(n)] = terms_payload(coeff)
    return {
        "orders": orders,
        "truncation_order": series.trunc,
        "display": series_str(series),
    }
