"""Fixed-point model of the equivariant cohomology of instanton moduli.

The module has one basis vector ``[I_lambda]`` per r-partition ``lambda``.
This file builds the tangent, tautological and normal characters at fixed
points, the Euler classes ``eu_lambda``, the diagonal intersection pairing,
the Gaiotto state, the Nekrasov series and the raising, lowering and
diagonal operators ``f_{1,l}``, ``f_{-1,l}``, ``f_{0,l}``.
"""

from .characters import Character, W_char, euler, v_char
from .linalg import LinearOperator, diagonal_operator
from .partitions import MultiPartition, enumerate_multipartitions
from .series import FormalSeries


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def _weight(r, a, b, tpow, qpow):
    """chi_a chi_b^{-1} t^tpow q^qpow (colours one-based)."""
    chi = [0] * r
    chi[a - 1] += 1
    chi[b - 1] -= 1
    return (qpow, tpow) + tuple(chi)


def tangent_character(ctx, lam):
    """Character of the tangent space at the fixed point ``lam``."""
    lam = MultiPartition(lam)
    r = len(lam)
    terms = {}

    def bump(w):
        terms[w] = terms.get(w, 0) + 1

    for a in range(1, r + 1):
        la = lam[a - 1]
        for b in range(1, r + 1):
            lb = lam[b - 1]
            for s in la.boxes():
                bump(_weight(r, a, b, lb.leg(s), -la.arm(s) - 1))
            for s in lb.boxes():
                bump(_weight(r, a, b, -la.leg(s) - 1, lb.arm(s)))
    return Character(terms, r)


def taut_character(ctx, lam):
    """Tautological character: sum over boxes of chi_a^{-1} t^{y(s)} q^{x(s)}."""
    lam = MultiPartition(lam)
    r = len(lam)
    terms = {}
    for a, s in lam.boxes():
        chi = [0] * r
        chi[a - 1] = -1
        w = (s.x, s.y) + tuple(chi)
        terms[w] = terms.get(w, 0) + 1
    return Character(terms, r)


def _check_cover(mu, lam):
    if lam.size != mu.size + 1 or not lam.contains(mu):
        raise ValueError(f"{mu.text()} is not covered by {lam.text()}")


def normal_character_taut(ctx, mu, lam):
    """Normal character from the tautological form."""
    mu, lam = MultiPartition(mu), MultiPartition(lam)
    r = len(lam)
    one = Character.one(r)
    qi = Character.monomial(r, q=-1)
    ti = Character.monomial(r, t=-1)
    tm, tl = taut_character(ctx, mu), taut_character(ctx, lam)
    W = W_char(r)
    v = v_char(r)
    return -((one - qi) * (one - ti) * tm * tl.dual()) + tm * W.dual() + v * tl.dual() * W - v


def normal_character(ctx, mu, lam):
    """Normal character N_{mu,lambda} for ``mu`` covered by ``lam`` (arm/leg form)."""
    mu, lam = MultiPartition(mu), MultiPartition(lam)
    _check_cover(mu, lam)
    r = len(lam)
    terms = {}

    def bump(w, m=1):
        terms[w] = terms.get(w, 0) + m

    for a in range(1, r + 1):
        for b in range(1, r + 1):
            for s in lam[a - 1].boxes():
                bump(_weight(r, a, b, mu[b - 1].leg(s), -lam[a - 1].arm(s) - 1))
            for s in mu[b - 1].boxes():
                bump(_weight(r, a, b, -lam[a - 1].leg(s) - 1, mu[b - 1].arm(s)))
    bump((-1, -1) + (0,) * r, -1)
    return Character(terms, r)


def new_box_character(ctx, mu, lam):
    """Character of the box of lam / mu: chi_a^{-1} t^{y(s)} q^{x(s)}."""
    return taut_character(ctx, lam) - taut_character(ctx, mu)


# ---------------------------------------------------------------------------
# the fixed-point model
# ---------------------------------------------------------------------------

class FixedPointModel:
    """Caches Euler classes and operator entries for one parameter context.

    ``fault`` is a pair ``(source, target)`` of r-partitions whose entry of
    ``f_{1,0}`` is shifted by 1; it exists to test that relation checks
    detect and localize a corrupted matrix entry.
    """

    def __init__(self, ctx, fault=None):
        self.ctx = ctx
        self.fault = fault
        self.r = ctx.r
        self._eu = {}
        self._raise = {}
        self._ops = {}

    def eu(self, lam):
        lam = MultiPartition(lam)
        val = self._eu.get(lam)
        if val is None:
            val = euler(self.ctx, tangent_character(self.ctx, lam).dual())
            self._eu[lam] = val
        return val

    def box_root(self, a, s):
        """First Chern class of a box character: x(s) x + y(s) y - e_a."""
        ctx = self.ctx
        return s.x * ctx.x + s.y * ctx.y - ctx.e[a - 1]

    def cover_factor(self, small, big):
        """eu(N*_{small,big} - T*_big): the raising coefficient without content power."""
        key = (small, big)
        val = self._raise.get(key)
        if val is None:
            char = normal_character(self.ctx, small, big).dual() - tangent_character(self.ctx, big).dual()
            val = euler(self.ctx, char)
            self._raise[key] = val
        return val

    def lower_factor(self, small, big):
        """eu(N*_{small,big} - T*_small): the lowering coefficient without content power."""
        key = ("low", small, big)
        val = self._raise.get(key)
        if val is None:
            char = normal_character(self.ctx, small, big).dual() - tangent_character(self.ctx, small).dual()
            val = euler(self.ctx, char)
            self._raise[key] = val
        return val

    def power_sum(self, lam, l):
        """sum over boxes of c_a(s)^l (l = 0 gives the number of boxes)."""
        total = self.ctx.zero
        for a, s in lam.boxes():
            total = total + self.box_root(a, s) ** l
        return total

    # -- operators -------------------------------------------------------
    def f(self, kind, l):
        """The operators f_{1,l}, f_{-1,l}, f_{0,l}."""
        key = ("f", kind, l)
        if key in self._ops:
            return self._ops[key]
        if l < 0:
            raise ValueError("f operators need l >= 0")
        if kind == 1:
            def col(lam):
                out = {}
                for a, s, big in lam.add_boxes():
                    val = self.cover_factor(lam, big)
                    if l:
                        val = val * self.box_root(a, s) ** l
                    if l == 0 and self.fault == (lam, big):
                        val = val + 1
                    if val:
                        out[big] = val
                return out
            op = LinearOperator(col, 1, f"f(1,{l})")
        elif kind == -1:
            def col(lam):
                out = {}
                for a, s, small in lam.remove_boxes():
                    val = self.lower_factor(small, lam)
                    if l:
                        val = val * self.box_root(a, s) ** l
                    if val:
                        out[small] = val
                return out
            op = LinearOperator(col, -1, f"f(-1,{l})")
        elif kind == 0:
            op = diagonal_operator(lambda lam: self.power_sum(lam, l), f"f(0,{l})")
        else:
            raise ValueError("kind must be one of 1, -1, 0")
        self._ops[key] = op
        return op

    def h(self, kind, l):
        """Normalized generators: h_{1,l}, h_{-1,l} and h_{0,l} (l >= 1)."""
        key = ("h", kind, l)
        if key in self._ops:
            return self._ops[key]
        ctx = self.ctx
        if kind == 1:
            op = self.f(1, l).scaled(ctx.x ** (1 - l) * ctx.y)
        elif kind == -1:
            op = self.f(-1, l).scaled((-1) ** (self.r - 1) / ctx.x ** l)
        elif kind == 0:
            if l < 1:
                raise ValueError("h_{0,l} is defined for l >= 1")
            op = self.f(0, l - 1).scaled(1 / ctx.x ** (l - 1))
        else:
            raise ValueError("kind must be one of 1, -1, 0")
        op.name = f"h({kind},{l})"
        self._ops[key] = op
        return op


def model(ctx):
    """The cached :class:`FixedPointModel` attached to ``ctx``."""
    m = ctx.__dict__.get("_fixed_point_model")
    if m is None:
        m = FixedPointModel(ctx)
        ctx.__dict__["_fixed_point_model"] = m
    return m


def eu_fixed_point(ctx, lam):
    """eu_lambda = eu(T*_lambda)."""
    return model(ctx).eu(lam)


def op_f(ctx, kind, l):
    return model(ctx).f(kind, l)


def op_h(ctx, kind, l):
    return model(ctx).h(kind, l)


# ---------------------------------------------------------------------------
# vectors, pairing, Gaiotto state and the Nekrasov series
# ---------------------------------------------------------------------------

class FpVector(dict):
    """Coefficients in the fixed-point basis, all of the same grade."""

    def __init__(self, grade, coeffs=()):
        super().__init__()
        self.grade = grade
        for lam, c in dict(coeffs).items():
            lam = MultiPartition(lam)
            if lam.size != grade:
                raise ValueError(f"{lam.text()} does not have weight {grade}")
            if c:
                self[lam] = c

    def to_json(self, ctx):
        return {"grade": self.grade,
                "terms": [{"mp": lam.text(), "coeff": ctx.fmt(c)} for lam, c in self.items()]}


def pairing(ctx, u, v):
    """Intersection pairing: ([I_lambda], [I_mu]) = delta eu_lambda."""
    gu = getattr(u, "grade", None)
    gv = getattr(v, "grade", None)
    if gu is not None and gv is not None and gu != gv:
        raise ValueError(f"grade mismatch: {gu} vs {gv}")
    total = ctx.zero
    m = model(ctx)
    for lam, c in u.items():
        d = v.get(lam)
        if d:
            total = total + c * d * m.eu(lam)
    return total


def gaiotto(ctx, n):
    """G_n = sum over r-partitions of n of eu_lambda^{-1} [I_lambda]."""
    m = model(ctx)
    return FpVector(n, {lam: 1 / m.eu(lam) for lam in enumerate_multipartitions(ctx.r, n)})


def nekrasov(ctx, N):
    """Z = sum_n q^n sum_{|lambda| = n} eu_lambda^{-1}, truncated at q^N."""
    m = model(ctx)
    coeffs = []
    for n in range(N + 1):
        total = ctx.zero
        for lam in enumerate_multipartitions(ctx.r, n):
            total = total + 1 / m.eu(lam)
        coeffs.append(total)
    return FormalSeries(coeffs, N, ctx.zero, var="q")


def nekrasov_json(ctx, N):
    series = nekrasov(ctx, N)
    return {f"q^{n}": ctx.fmt(c) for n, c in enumerate(series.coeffs)}
