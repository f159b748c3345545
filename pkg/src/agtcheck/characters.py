"""Torus characters and their Euler classes.

A weight ``q^a t^b chi_1^{m_1} ... chi_r^{m_r}`` is stored as the exponent
tuple ``(a, b, m_1, ..., m_r)``.  A character is a finite formal integer
combination of weights; negative multiplicities give virtual characters.
The Euler class of a weight is its linear form ``a x + b y + sum m_c e_c``.
"""

from collections import Counter


class InvalidCharacterError(ValueError):
    """The trivial weight occurs with nonzero multiplicity."""


class Character:
    """Immutable virtual character over the torus with rank ``r`` framing."""

    __slots__ = ("terms", "r")

    def __init__(self, terms, r):
        clean = {}
        for w, m in dict(terms).items():
            if m:
                if len(w) != r + 2:
                    raise ValueError(f"weight {w} does not have {r + 2} exponents")
                clean[tuple(w)] = m
        self.terms = clean
        self.r = r

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, r):
        return cls({}, r)

    @classmethod
    def monomial(cls, r, q=0, t=0, chi=None, mult=1):
        chi = tuple(chi) if chi is not None else (0,) * r
        return cls({(q, t) + chi: mult}, r)

    @classmethod
    def one(cls, r):
        return cls.monomial(r)

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        out = Counter(self.terms)
        for w, m in other.terms.items():
            out[w] += m
        return Character(out, self.r)

    def __neg__(self):
        return Character({w: -m for w, m in self.terms.items()}, self.r)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Character({w: m * other for w, m in self.terms.items()}, self.r)
        out = Counter()
        for w1, m1 in self.terms.items():
            for w2, m2 in other.terms.items():
                out[tuple(a + b for a, b in zip(w1, w2))] += m1 * m2
        return Character(out, self.r)

    __rmul__ = __mul__

    def dual(self):
        return Character({tuple(-a for a in w): m for w, m in self.terms.items()}, self.r)

    def rank(self):
        """Total multiplicity (virtual dimension)."""
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, Character) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["q", "t"] + [f"chi{c}" for c in range(1, self.r + 1)]
        pieces = []
        for w, m in sorted(self.terms.items()):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, w) if e) or "1"
            pieces.append(mono if m == 1 else f"{m}*{mono}")
        return " + ".join(pieces)


def q_char(r):
    return Character.monomial(r, q=1)


def t_char(r):
    return Character.monomial(r, t=1)


def chi_char(r, a, power=1):
    """chi_a^power, colour ``a`` one-based."""
    chi = [0] * r
    chi[a - 1] = power
    return Character.monomial(r, chi=chi)


def v_char(r):
    """v = (q t)^{-1}."""
    return Character.monomial(r, q=-1, t=-1)


def W_char(r):
    """W = chi_1^{-1} + ... + chi_r^{-1}."""
    out = Character.zero(r)
    for a in range(1, r + 1):
        out = out + chi_char(r, a, -1)
    return out


def weight_form(ctx, w):
    """The linear form a x + b y + sum_c m_c e_c of the weight ``w``."""
    total = ctx.zero
    if w[0]:
        total = total + w[0] * ctx.x
    if w[1]:
        total = total + w[1] * ctx.y
    for c, m in enumerate(w[2:]):
        if m:
            total = total + m * ctx.e[c]
    return total


def euler(ctx, char):
    """Euler class: product of weight forms raised to their multiplicities."""
    num = ctx.one
    den = ctx.one
    for w, m in char.terms.items():
        if not any(w):
            raise InvalidCharacterError("the trivial weight occurs in the character")
        form = weight_form(ctx, w)
        if not form:
            raise InvalidCharacterError(f"weight {w} has a vanishing linear form at this point")
        if m > 0:
            num = num * form ** m
        else:
            den = den * form ** (-m)
    return num / den if den != ctx.one else num
