"""Truncated formal power series with exact coefficients.

A :class:`FormalSeries` stores the coefficients of ``s^0 .. s^N``.  All
operations truncate at ``N`` and never look past it.  The special series
used by the generating function of the diagonal generators E_l live here as
well: G_l(1 + a s), phi_l, varphi_l and K(kappa, omega, s).
"""

from math import comb


class FormalSeries:
    """Coefficients ``coeffs[k]`` of ``var^k`` for ``0 <= k <= order``."""

    __slots__ = ("coeffs", "order", "var", "zero")

    def __init__(self, coeffs, order, zero, var="s"):
        coeffs = list(coeffs)[: order + 1]
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.var = var
        self.zero = zero

    @classmethod
    def constant(cls, c, order, zero, var="s"):
        return cls([c], order, zero, var)

    def __getitem__(self, k):
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("series truncated at different orders")

    def __add__(self, other):
        if not isinstance(other, FormalSeries):
            out = list(self.coeffs)
            out[0] = out[0] + other
            return FormalSeries(out, self.order, self.zero, self.var)
        self._check(other)
        return FormalSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                            self.order, self.zero, self.var)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-a for a in self.coeffs], self.order, self.zero, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return FormalSeries([c * a for a in self.coeffs], self.order, self.zero, self.var)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        self._check(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``var^k`` (k >= 0), truncating."""
        return FormalSeries([self.zero] * k + self.coeffs, self.order, self.zero, self.var)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries) or self.order != other.order:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        terms = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) + f" + O({self.var}^{self.order + 1})" if terms else f"O({self.var}^{self.order + 1})"


def series_mul(f, g):
    n = f.order
    out = [f.zero] * (n + 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j in range(n + 1 - i):
            b = g.coeffs[j]
            if b != 0:
                out[i + j] = out[i + j] + a * b
    return FormalSeries(out, n, f.zero, f.var)


def series_exp(f):
    """exp(f) for a series with zero constant term."""
    if f.coeffs[0] != 0:
        raise ValueError("exp requires a series with zero constant term")
    n = f.order
    one = f.zero + 1
    g = [one] + [f.zero] * n
    for m in range(1, n + 1):
        acc = f.zero
        for k in range(1, m + 1):
            if f.coeffs[k] != 0 and g[m - k] != 0:
                acc = acc + k * f.coeffs[k] * g[m - k]
        g[m] = acc / m
    return FormalSeries(g, n, f.zero, f.var)


def series_log(f):
    """log(f) for a series with constant term 1."""
    if f.coeffs[0] != 1:
        raise ValueError("log requires a series with constant term 1")
    n = f.order
    h = [f.zero] * (n + 1)
    for m in range(1, n + 1):
        acc = m * f.coeffs[m]
        for k in range(1, m):
            if h[k] != 0 and f.coeffs[m - k] != 0:
                acc = acc - k * h[k] * f.coeffs[m - k]
        h[m] = acc / m
    return FormalSeries(h, n, f.zero, f.var)


def series_inverse(f):
    """1/f for a series with invertible constant term."""
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = f.order
    inv0 = 1 / c0
    g = [inv0] + [f.zero] * n
    for m in range(1, n + 1):
        acc = f.zero
        for k in range(1, m + 1):
            if f.coeffs[k] != 0 and g[m - k] != 0:
                acc = acc + f.coeffs[k] * g[m - k]
        g[m] = -acc * inv0
    return FormalSeries(g, n, f.zero, f.var)


def G_of_one_plus(l, a, order, zero):
    """The series of G_l(1 + a s) in s.

    G_0(u) = -log(u) and G_l(u) = (u^{-l} - 1)/l for l >= 1.
    """
    coeffs = [zero] * (order + 1)
    power = zero + 1
    for m in range(1, order + 1):
        power = power * a
        if l == 0:
            coeffs[m] = power * ((-1) ** m) / m
        else:
            # binomial coefficient of (1 + a s)^{-l}: (-1)^m C(l + m - 1, m)
            coeffs[m] = power * ((-1) ** m * comb(l + m - 1, m)) / l
    return FormalSeries(coeffs, order, zero)


def phi_series(ctx, l, order):
    """phi_l(s) = s^l G_l(1 + xi s)."""
    return G_of_one_plus(l, ctx.xi, order, ctx.zero).shift(l)


def varphi_series(ctx, l, order):
    """varphi_l(s) = sum over q in {1, -xi, -kappa} of s^l (G_l(1 - q s) - G_l(1 + q s))."""
    total = FormalSeries([], order, ctx.zero)
    for q in (ctx.one, -ctx.xi, -ctx.kappa):
        total = total + G_of_one_plus(l, -q, order, ctx.zero) - G_of_one_plus(l, q, order, ctx.zero)
    return total.shift(l)


def K_series(ctx, omega, order):
    """K(kappa, omega, s) = (1 + xi s)(1 + kappa omega s) / (1 + xi s + kappa omega s)."""
    zero, one = ctx.zero, ctx.one
    a = FormalSeries([one, ctx.xi], order, zero)
    b = FormalSeries([one, ctx.kappa * omega], order, zero)
    c = FormalSeries([one, ctx.xi + ctx.kappa * omega], order, zero)
    return a * b * series_inverse(c)


def series_special(ctx, kind, l, order, omega=None):
    """Dispatch for the named special series ``G_l``, ``phi_l``, ``varphi_l``, ``K``.

    ``G_l`` returns G_l(1 + s).
    """
    if kind == "G_l":
        return G_of_one_plus(l, ctx.one, order, ctx.zero)
    if kind == "phi_l":
        return phi_series(ctx, l, order)
    if kind == "varphi_l":
        if order < l + 4:
            raise ValueError("varphi_l needs order >= l + 4 to show its leading term")
        return varphi_series(ctx, l, order)
    if kind == "K":
        if omega is None:
            raise ValueError("K(kappa, omega, s) needs omega")
        return K_series(ctx, omega, order)
    raise ValueError(f"unknown series kind {kind!r}")
