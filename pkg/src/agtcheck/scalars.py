"""Scalars of the parameter field Q(x, y, e_1, ..., e_r).

Two realizations are provided.  In *exact* mode a scalar is a reduced
fraction of multivariate polynomials with rational coefficients (backed by
FLINT through python-flint).  In *point* mode every generator is replaced by
a rational number and scalars are plain :class:`fractions.Fraction` values.

All downstream code only uses ``+ - * /``, comparison with ``0`` and
truthiness, so the two realizations are interchangeable.
"""

from fractions import Fraction
import random

import flint


class DegeneratePointError(ZeroDivisionError):
    """A denominator vanished at the chosen evaluation point."""


def _poly_str(p):
    """Render an integer-coefficient polynomial as a sorted monomial list."""
    names = p.context().names()
    if p.is_zero():
        return "0"
    pieces = []
    for exps, coeff in p.terms():
        coeff = int(coeff)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _coeff_lcm(p):
    """Least common multiple of the coefficient denominators of ``p``."""
    den = 1
    for c in p.coeffs():
        den = den * int(c.q) // _gcd(den, int(c.q))
    return den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class RatFunc:
    """Reduced fraction ``num/den`` of ``fmpq_mpoly`` values.

    The denominator is monic with respect to the graded lexicographic order
    on (x, y, e_1, ..., e_r), which makes the representation canonical.
    """

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, reduce=True):
        if reduce:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den
        self.field = field

    # -- coercion -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc(a + c, b, self.field, reduce=False)
        if b == d:
            return RatFunc(a + c, b, self.field)
        g = b.gcd(d)
        if g.is_one():
            return _reduced_sum(a * d + c * b, b * d, g, self.field)
        bg, dg = b // g, d // g
        return _reduced_sum(a * dg + c * bg, b * dg, g, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.field, reduce=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.field.zero
            return RatFunc(self.num * other, self.den, self.field, reduce=False)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc(a * c, b, self.field, reduce=False)
        if a.is_zero() or c.is_zero():
            return self.field.zero
        g1 = a.gcd(d) if not d.is_one() else d
        g2 = c.gcd(b) if not b.is_one() else b
        num = (a // g1) * (c // g2)
        den = (b // g2) * (d // g1)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(num, den, self.field, reduce=False)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, self.field)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.num / other, self.den, self.field, reduce=False)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, self.field, reduce=False)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.num.is_zero()
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return not self.num.is_zero()

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # -- conversion ------------------------------------------------------
    def evaluate(self, values):
        """Evaluate at a tuple of rationals (one per generator)."""
        vals = [flint.fmpq(v.numerator, v.denominator) for v in values]
        d = self.den(*vals)
        if d == 0:
            raise DegeneratePointError("denominator vanishes at the evaluation point")
        q = self.num(*vals) / d
        return Fraction(int(q.p), int(q.q))

    def is_polynomial(self):
        return self.den.is_one()

    def __str__(self):
        return self.field.format(self)

    __repr__ = __str__


def _reduced_sum(t, den, g, field):
    if t.is_zero():
        return field.zero
    if g.is_one():
        return RatFunc(t, den, field, reduce=False)
    h = t.gcd(g)
    if not h.is_one():
        t = t // h
        den = den // h
    lc = den.leading_coefficient()
    if lc != 1:
        t, den = t / lc, den / lc
    return RatFunc(t, den, field, reduce=False)


class ExactField:
    """The field Q(x, y, e_1..e_r) with fixed generator order.

    ``names`` replaces the default generator names, which gives other
    rational function fields with the same arithmetic.
    """

    def __init__(self, r, names=None):
        self.r = r
        self.names = tuple(names) if names else ("x", "y") + tuple(f"e{a}" for a in range(1, r + 1))
        self.ring = flint.fmpq_mpoly_ctx.get(self.names, "deglex")
        self._one_poly = self.ring.from_dict({(0,) * len(self.names): 1})
        self.zero = RatFunc(self.ring.from_dict({}), self._one_poly, self, reduce=False)
        self.one = RatFunc(self._one_poly, self._one_poly, self, reduce=False)
        self.gens = tuple(RatFunc(g, self._one_poly, self, reduce=False) for g in self.ring.gens())

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero
        poly = self.ring.from_dict({(0,) * len(self.names): flint.fmpq(c.numerator, c.denominator)})
        return RatFunc(poly, self._one_poly, self, reduce=False)

    def from_poly(self, poly):
        return RatFunc(poly, self._one_poly, self, reduce=False)

    def format(self, f):
        """Canonical text: integer-coefficient ``num/(den)``."""
        if f.num.is_zero():
            return "0"
        nden = _coeff_lcm(f.num)
        dden = _coeff_lcm(f.den)
        # bring both to integer coefficients with a common scale
        scale = Fraction(nden * dden)
        num = f.num * flint.fmpq(scale.numerator, scale.denominator)
        den = f.den * flint.fmpq(scale.numerator, scale.denominator)
        g = _gcd(_content(num), _content(den))
        num = num / g
        den = den / g
        num_s = _poly_str(num)
        if den.is_one():
            return num_s
        if len(num) > 1:
            num_s = f"({num_s})"
        den_s = _poly_str(den)
        if den_s.isalnum():
            return f"{num_s}/{den_s}"
        return f"{num_s}/({den_s})"


def _content(p):
    out = 0
    for c in p.coeffs():
        out = _gcd(out, int(c.p))
    return out


_ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73]
_EVEN = [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24]


def generic_point(r, seed=None):
    """A point (x, y, e_1..e_r) built from distinct odd primes over distinct evens.

    ``seed=None`` returns the fixed default point; an integer seed draws a
    reproducible random point of the same shape.
    """
    if seed is None:
        nums = _ODD_PRIMES[: r + 2]
        dens = _EVEN[: r + 2]
        signs = [1, -1] + [(-1) ** a for a in range(r)]
    else:
        rng = random.Random(seed)
        nums = rng.sample(_ODD_PRIMES, r + 2)
        dens = rng.sample(_EVEN, r + 2)
        signs = [rng.choice((1, -1)) for _ in range(r + 2)]
    return tuple(Fraction(s * n, d) for s, n, d in zip(signs, nums, dens))


class ParameterContext:
    """Rank, scalar mode and the derived constants kappa, xi, eps_a, c_l.

    In exact mode scalars are :class:`RatFunc`; in point mode they are
    :class:`Fraction`.  ``x_one=True`` gives the chart where x is set to 1
    and ``e_zero=True`` sets every framing parameter e_a to 0 (for r = 1 this
    is the module of the Hilbert scheme of points).
    """

    def __init__(self, r, mode="exact", point=None, x_one=False, e_zero=False):
        if not isinstance(r, int) or r < 1:
            raise ValueError("rank r must be a positive integer")
        if mode not in ("exact", "point"):
            raise ValueError(f"unknown scalar mode {mode!r}")
        self.r = r
        self.mode = mode
        self.x_one = x_one
        self.e_zero = e_zero
        if mode == "exact":
            if point is not None:
                raise ValueError("a point assignment is only meaningful in point mode")
            self.field = ExactField(r)
            gens = list(self.field.gens)
            if x_one:
                gens[0] = self.field.one
            if e_zero:
                gens[2:] = [self.field.zero] * r
            self.zero = self.field.zero
            self.one = self.field.one
            self.point = None
        else:
            if point is None:
                point = generic_point(r)
            point = tuple(Fraction(v) for v in point)
            if len(point) != r + 2:
                raise ValueError(f"a point needs {r + 2} coordinates (x, y, e_1..e_r)")
            if x_one:
                point = (Fraction(1),) + point[1:]
            if e_zero:
                point = point[:2] + (Fraction(0),) * r
            if point[0] == 0:
                raise DegeneratePointError("x must be nonzero")
            self.field = None
            self.zero = Fraction(0)
            self.one = Fraction(1)
            self.point = point
            gens = list(point)
        self.x = gens[0]
        self.y = gens[1]
        self.e = tuple(gens[2:])
        self.kappa = -self.y / self.x
        self.xi = self.one - self.kappa
        self.eps = tuple(ea / self.x for ea in self.e)
        self._c = {}

    def scalar(self, v):
        """Coerce an int or Fraction into the scalar realization."""
        if self.mode == "exact":
            return self.field.const(v)
        return Fraction(v)

    def c(self, l):
        """Central parameter c_l = p_l(eps_1, ..., eps_r); c_0 = r."""
        if l not in self._c:
            if l == 0:
                self._c[l] = self.scalar(self.r)
            else:
                total = self.zero
                for ea in self.eps:
                    total = total + ea ** l
                self._c[l] = total
        return self._c[l]

    def chart_x1(self):
        """The same context with x specialized to 1."""
        if self.mode == "exact":
            return ParameterContext(self.r, "exact", x_one=True, e_zero=self.e_zero)
        return ParameterContext(self.r, "point", self.point, x_one=True, e_zero=self.e_zero)

    def with_e_zero(self):
        """The same context with every e_a specialized to 0."""
        if self.mode == "exact":
            return ParameterContext(self.r, "exact", x_one=self.x_one, e_zero=True)
        return ParameterContext(self.r, "point", self.point, x_one=self.x_one, e_zero=True)

    def fmt(self, s):
        """Canonical text form of a scalar."""
        if self.mode == "exact":
            if isinstance(s, RatFunc):
                return self.field.format(s)
            return self.field.format(self.field.const(s))
        return str(Fraction(s))

    def to_point(self, s, point):
        """Evaluate an exact scalar at ``point`` (x, y, e_1..e_r)."""
        if isinstance(s, RatFunc):
            return s.evaluate(point)
        return Fraction(s)

    def __repr__(self):
        where = "" if self.mode == "exact" else f", point={tuple(str(v) for v in self.point)}"
        return (f"ParameterContext(r={self.r}, mode={self.mode!r}{where}, "
                f"x_one={self.x_one}, e_zero={self.e_zero})")


def make_params(r, mode="exact", point=None, x_one=False, e_zero=False):
    """Build a :class:`ParameterContext`; see the class docstring.

    In point mode ``point`` is a tuple (x, y, e_1..e_r), a dict keyed by
    generator name, or a list of ``(name, value)`` pairs.
    """
    if mode == "point" and point is not None:
        if not isinstance(point, dict) and point and isinstance(point[0], tuple):
            pairs = list(point)
            point = {}
            for name, value in pairs:
                if name in point:
                    raise ValueError(f"generator {name} is assigned twice")
                point[name] = value
        if isinstance(point, dict):
            keys = ["x", "y"] + [f"e{a}" for a in range(1, r + 1)]
            unknown = set(point) - set(keys)
            if unknown:
                raise ValueError(f"unknown generators {sorted(unknown)}")
            missing = [k for k in keys if k not in point]
            if missing:
                raise ValueError(f"missing generators {missing}")
            point = tuple(Fraction(point[k]) for k in keys)
    return ParameterContext(r, mode, point, x_one, e_zero)
