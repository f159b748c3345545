"""Shuffle algebra model of the raising half and its action on fixed points.

A shuffle element of weight ``n`` is a symmetric polynomial in
``z_1, ..., z_n`` whose coefficients are polynomials in the parameters.  The
product is

    (P * Q)(z_1..z_{n+m}) = 1/(n! m!) SYM prod_{i <= n < j} k(z_i - z_j) P Q

with ``k(w) = (x + y + w)(x - w)(y - w) / w``.  The twisted symmetrization
``varpi_n(P) = SYM prod_{i<j} g(z_i - z_j) P`` with
``g(w) = (w + x)(w + y) / (w (w + x + y))`` evaluated at the box roots of a
skew shape ``lambda / mu`` and multiplied by the class ``a_{mu,lambda}``
gives the matrix elements of ``f_{1,l_1} ... f_{1,l_n}``.

All polynomials live in one FLINT ring per parameter context whose
generators are the parameters (exact mode only), two free shift variables
``u, v`` and the variables ``z_1..z_N``.
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

import flint

from .characters import Character, W_char, euler, v_char
from .linalg import LinearOperator
from .localization import model, taut_character
from .partitions import MultiPartition, enumerate_multipartitions
from .scalars import DegeneratePointError, ExactField, RatFunc
from .shc import RelationReport, _regime

MAX_VARIABLES = 6


class NotRegularError(ValueError):
    """A twisted symmetrization has a pole at the requested box roots."""


def _parity(perm):
    """Sign of a permutation given as a tuple of images."""
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _fmpq(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


class ShuffleRing:
    """Polynomial ring Q[params, u, v, z_1..z_N] attached to one context."""

    def __init__(self, ctx, nvars=MAX_VARIABLES):
        self.ctx = ctx
        self.nvars = nvars
        self.base_names = ctx.field.names if ctx.mode == "exact" else ()
        self.k = len(self.base_names)
        names = self.base_names + ("u", "v") + tuple(f"z{i}" for i in range(1, nvars + 1))
        self.ring = flint.fmpq_mpoly_ctx.get(names, "deglex")
        gens = self.ring.gens()
        self.u = gens[self.k]
        self.v = gens[self.k + 1]
        self.z = gens[self.k + 2:]
        self.coeff_field = ExactField(0, names=self.base_names + ("u", "v"))
        self.x = self.lift(ctx.x)
        self.y = self.lift(ctx.y)
        self.one = self.const(1)
        self.zero = self.const(0)

    # -- coercion --------------------------------------------------------
    def const(self, c):
        return self.ring.from_dict({(0,) * self.ring.nvars(): _fmpq(c)}) if c else self.ring.from_dict({})

    def lift(self, s):
        """A polynomial scalar of the context as an element of the ring."""
        if isinstance(s, (int, Fraction)):
            return self.const(s)
        if not s.den.is_one():
            raise ValueError(f"scalar {s} is not a polynomial in the parameters")
        return s.num.compose(*self.ring.gens()[: self.k], ctx=self.ring)

    def shift_vars(self, poly, offset):
        """Rename z_i to z_{i + offset}."""
        gens = list(self.ring.gens())
        args = gens[: self.k + 2]
        args += [self.z[i + offset] if i + offset < self.nvars else self.zero for i in range(self.nvars)]
        return poly.compose(*args)

    def permute(self, poly, images):
        """Substitute z_i -> z_{images[i]} (zero-based) for i < len(images)."""
        gens = list(self.ring.gens())
        args = gens[: self.k + 2]
        for i in range(self.nvars):
            args.append(self.z[images[i]] if i < len(images) else self.z[i])
        return poly.compose(*args)

    def substitute(self, poly, values):
        """Substitute z_i -> values[i] (ring elements)."""
        gens = list(self.ring.gens())
        args = gens[: self.k + 2] + list(values) + list(self.z[len(values):])
        return poly.compose(*args)

    def check_variables(self, n):
        if n > self.nvars:
            raise ValueError(f"at most {self.nvars} shuffle variables are available")

    # -- evaluation ------------------------------------------------------
    def evaluate(self, poly, values):
        """Evaluate at z_i = values[i] (context scalars), with u = v = 0."""
        ctx = self.ctx
        if ctx.mode == "exact":
            base = ctx.field.ring
            zero = base.from_dict({})
            args = list(base.gens()) + [zero, zero]
            for val in values:
                args.append(val.num if hasattr(val, "num") else ctx.field.const(val).num)
            args += [zero] * (self.nvars - len(values))
            return ctx.field.from_poly(poly.compose(*args, ctx=base))
        args = [flint.fmpq(0), flint.fmpq(0)] + [_fmpq(v) for v in values]
        args += [flint.fmpq(0)] * (self.nvars - len(values))
        q = poly(*args)
        return Fraction(int(q.p), int(q.q))

    def format_coeff(self, coeff):
        return self.coeff_field.format(self.coeff_field.from_poly(coeff))

    # -- kernels ---------------------------------------------------------
    def vandermonde(self, idx):
        out = self.one
        for a, b in combinations(idx, 2):
            out = out * (self.z[a] - self.z[b])
        return out

    def kernel_numerator(self, w):
        """w k(w) = (x + y + w)(x - w)(y - w)."""
        return (self.x + self.y + w) * (self.x - w) * (self.y - w)


def shuffle_ring(ctx):
    """The cached :class:`ShuffleRing` attached to ``ctx``."""
    ring = ctx.__dict__.get("_shuffle_ring")
    if ring is None:
        ring = ShuffleRing(ctx)
        ctx.__dict__["_shuffle_ring"] = ring
    return ring


class ShufflePoly:
    """A symmetric polynomial in z_1..z_n, an element of weight ``n``."""

    def __init__(self, ring, n, poly, check=True):
        ring.check_variables(n)
        self.ring = ring
        self.n = n
        self.poly = poly
        if check and not self.is_symmetric():
            raise ValueError("shuffle elements must be symmetric in z_1..z_n")

    def is_symmetric(self):
        for i in range(self.n - 1):
            images = list(range(self.n))
            images[i], images[i + 1] = i + 1, i
            if self.ring.permute(self.poly, images) != self.poly:
                return False
        return True

    def _same(self, other):
        if not isinstance(other, ShufflePoly) or other.ring is not self.ring:
            raise TypeError("shuffle elements from different rings")
        if other.n != self.n:
            raise ValueError(f"weights differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._same(other)
        return ShufflePoly(self.ring, self.n, self.poly + other.poly, check=False)

    def __sub__(self, other):
        self._same(other)
        return ShufflePoly(self.ring, self.n, self.poly - other.poly, check=False)

    def __neg__(self):
        return ShufflePoly(self.ring, self.n, -self.poly, check=False)

    def scaled(self, c):
        c = c if isinstance(c, flint.fmpq_mpoly) else self.ring.lift(c)
        return ShufflePoly(self.ring, self.n, self.poly * c, check=False)

    def __mul__(self, other):
        return shuffle_product(self, other)

    def __eq__(self, other):
        return isinstance(other, ShufflePoly) and self.n == other.n and self.poly == other.poly

    def __hash__(self):
        return hash((self.n, str(self.poly)))

    def evaluate(self, values):
        return self.ring.evaluate(self.poly, values)

    def to_json(self):
        """Symmetrized monomial list: coefficient of each monomial symmetric function."""
        ring = self.ring
        k2 = ring.k + 2
        groups = {}
        for exps, c in self.poly.to_dict().items():
            zexp = tuple(int(e) for e in exps[k2:k2 + self.n])
            if any(exps[k2 + self.n:]):
                raise ValueError("polynomial uses variables beyond its weight")
            if list(zexp) != sorted(zexp, reverse=True):
                continue
            groups.setdefault(zexp, {})[tuple(exps[:k2])] = c
        terms = []
        for zexp in sorted(groups, key=lambda e: (sum(e), e)):
            coeff = ring.coeff_field.ring.from_dict(groups[zexp])
            terms.append({"m": list(zexp), "coeff": ring.format_coeff(coeff)})
        return {"n": self.n, "terms": terms}

    def __repr__(self):
        return f"ShufflePoly(n={self.n}, {self.poly})"


def theta(ctx, l):
    """The weight-one element z_1^l."""
    ring = shuffle_ring(ctx)
    if l < 0:
        raise ValueError("theta_l needs l >= 0")
    return ShufflePoly(ring, 1, ring.z[0] ** l, check=False)


def unit(ctx):
    """The weight-zero unit."""
    ring = shuffle_ring(ctx)
    return ShufflePoly(ring, 0, ring.one, check=False)


def shuffle_product(P, Q):
    """Kernel-twisted symmetrized product of symmetric polynomials."""
    if P.ring is not Q.ring:
        raise TypeError("shuffle elements from different rings")
    ring = P.ring
    n, m = P.n, Q.n
    total = n + m
    ring.check_variables(total)
    if n == 0 or m == 0:
        return ShufflePoly(ring, total, P.poly * Q.poly, check=False)
    numer = P.poly * ring.shift_vars(Q.poly, n)
    for i in range(n):
        for j in range(n, total):
            numer = numer * ring.kernel_numerator(ring.z[i] - ring.z[j])
    numer = numer * ring.vandermonde(range(n)) * ring.vandermonde(range(n, total))
    # the integrand is antisymmetric under S_n x S_m, so summing over the
    # coset representatives absorbs the 1/(n! m!) exactly
    acc = ring.zero
    for first in combinations(range(total), n):
        rest = [j for j in range(total) if j not in first]
        images = tuple(first) + tuple(rest)
        acc = acc + _parity(images) * ring.permute(numer, images)
    quo, rem = divmod(acc, ring.vandermonde(range(total)))
    assert rem == 0, "a kernel pole survived symmetrization"
    return ShufflePoly(ring, total, quo, check=False)


def shuffle_monomial(ctx, ls):
    """theta_{l_1} * theta_{l_2} * ... (left to right)."""
    shuffle_ring(ctx).check_variables(len(ls))
    out = unit(ctx)
    for l in ls:
        out = shuffle_product(out, theta(ctx, l))
    return out


def tau_automorphism(u, P):
    """Shift every variable: z_i -> z_i + u.

    ``u`` is a polynomial scalar of the context or a ring element (for
    instance the free shift variables ``ring.u`` and ``ring.v``).
    """
    ring = P.ring
    shift = u if isinstance(u, flint.fmpq_mpoly) else ring.lift(u)
    values = [ring.z[i] + shift for i in range(P.n)]
    return ShufflePoly(ring, P.n, ring.substitute(P.poly, values), check=False)


# ---------------------------------------------------------------------------
# twisted symmetrization
# ---------------------------------------------------------------------------

class RationalSym:
    """Symmetric rational function num/den in z_1..z_n.

    The fraction is kept as built; the gcd-reduced form is computed only
    when the stored denominator vanishes at an evaluation point.
    """

    def __init__(self, ring, n, num, den):
        self.ring = ring
        self.n = n
        self.num = num
        self.den = den
        self._reduced = None

    def reduced(self):
        if self._reduced is None:
            num, den = self.num, self.den
            g = num.gcd(den)
            if not g.is_one() and not g.is_zero():
                num, den = num // g, den // g
            self._reduced = (num, den)
        return self._reduced

    def parts(self, values, den_value=None):
        """Numerator and denominator values at z_i = values[i]."""
        ring = self.ring
        den = ring.evaluate(self.den, values) if den_value is None else den_value
        if den:
            return ring.evaluate(self.num, values), den
        num, den = self.reduced()
        den = ring.evaluate(den, values)
        if not den:
            if ring.ctx.mode == "point":
                raise DegeneratePointError("a twisted symmetrization pole meets the evaluation point")
            raise NotRegularError("the twisted symmetrization has a pole at these box roots")
        return ring.evaluate(num, values), den

    def evaluate(self, values):
        """Value at z_i = values[i]; raises if the function has a pole there."""
        num, den = self.parts(values)
        return num / den

    def is_regular_at(self, values):
        try:
            self.parts(values)
        except (NotRegularError, DegeneratePointError):
            return False
        return True

    def __eq__(self, other):
        return self.num * other.den == other.num * self.den


def varpi(ctx, poly, n):
    """SYM_n(prod_{i<j} g(z_i - z_j) P) for a polynomial P in z_1..z_n."""
    ring = shuffle_ring(ctx)
    ring.check_variables(n)
    s = ring.x + ring.y
    numer = poly
    den = ring.one
    for i, j in combinations(range(n), 2):
        w = ring.z[i] - ring.z[j]
        numer = numer * (w + ring.x) * (w + ring.y) * (s - w)
        den = den * (s + w) * (s - w)
    acc = ring.zero
    for images in permutations(range(n)):
        acc = acc + _parity(images) * ring.permute(numer, images)
    quo, rem = divmod(acc, ring.vandermonde(range(n)))
    assert rem == 0, "antisymmetrization is not divisible by the Vandermonde"
    return RationalSym(ring, n, quo, den)


def monomial(ctx, ls):
    """The polynomial z_1^{l_1} ... z_n^{l_n}."""
    ring = shuffle_ring(ctx)
    out = ring.one
    for i, l in enumerate(ls):
        out = out * ring.z[i] ** l
    return out


# ---------------------------------------------------------------------------
# the class a_{mu,lambda} and box roots
# ---------------------------------------------------------------------------

def _check_skew(mu, lam):
    mu, lam = MultiPartition(mu), MultiPartition(lam)
    if len(mu) != len(lam):
        raise ValueError("r-partitions of different rank")
    if lam.size <= mu.size or not lam.contains(mu):
        raise ValueError(f"{mu.text()} is not strictly contained in {lam.text()}")
    return mu, lam


def skew_boxes(mu, lam):
    mu, lam = _check_skew(mu, lam)
    return sorted(set(lam.boxes()) - set(mu.boxes()))


def box_roots(ctx, mu, lam):
    """The box roots x(s) x + y(s) y - e_a of the boxes of lambda / mu."""
    m = model(ctx)
    return [m.box_root(a, s) for a, s in skew_boxes(mu, lam)]


def gamma_character(ctx, mu, lam):
    """(1 - q)(1 - t) tau*_{mu,lam} tau_lam - tau*_{mu,lam} W - n v^{-1}."""
    mu, lam = _check_skew(mu, lam)
    r = len(lam)
    n = lam.size - mu.size
    one = Character.one(r)
    q = Character.monomial(r, q=1)
    t = Character.monomial(r, t=1)
    skew = taut_character(ctx, lam) - taut_character(ctx, mu)
    out = (one - q) * (one - t) * skew.dual() * taut_character(ctx, lam)
    out = out - skew.dual() * W_char(r)
    for _ in range(n):
        out = out - v_char(r).dual()
    return out


def gamma_coeff(ctx, mu, lam):
    """The class a_{mu,lambda}: Euler class of :func:`gamma_character`."""
    cache = ctx.__dict__.setdefault("_gamma_cache", {})
    key = (MultiPartition(mu), MultiPartition(lam))
    val = cache.get(key)
    if val is None:
        val = euler(ctx, gamma_character(ctx, mu, lam))
        cache[key] = val
    return val


def covers(mu, n):
    """All lambda containing ``mu`` with n more boxes."""
    layer = {MultiPartition(mu)}
    for _ in range(n):
        layer = {big for lam in layer for _, _, big in lam.add_boxes()}
    return sorted(layer, key=lambda lam: lam.text())


# ---------------------------------------------------------------------------
# operators from shuffle elements
# ---------------------------------------------------------------------------

def pair_factor(ctx, n):
    """R_n = prod_{i<j} -1 / ((x + y)^2 - (z_i - z_j)^2)."""
    ring = shuffle_ring(ctx)
    s = ring.x + ring.y
    den = ring.one
    for i, j in combinations(range(n), 2):
        w = ring.z[i] - ring.z[j]
        den = den * (w * w - s * s)
    return den


def shuffle_operator(ctx, P):
    """The operator with entries P(tau) R_n(tau) a_{mu,lambda}.

    With this map theta_{l_n} * ... * theta_{l_1} goes to
    f_{1,l_1} ... f_{1,l_n}, so shuffle products become reversed
    operator products.
    """
    ring = P.ring
    rat = RationalSym(ring, P.n, P.poly, pair_factor(ctx, P.n))

    def col(mu):
        out = {}
        for lam in covers(mu, P.n):
            val = rat.evaluate(box_roots(ctx, mu, lam)) * gamma_coeff(ctx, mu, lam)
            if val:
                out[lam] = val
        return out

    return LinearOperator(col, P.n, f"shuffle[{P.n}]")


def composition_image(ctx, ls, mu, cache=None):
    """f_{1,l_1} ... f_{1,l_n} [I_mu], reusing images of shared suffixes."""
    ls = tuple(ls)
    key = (ls, MultiPartition(mu))
    if cache is not None and key in cache:
        return cache[key]
    if not ls:
        vec = {MultiPartition(mu): ctx.one}
    else:
        vec = model(ctx).f(1, ls[0]).apply(composition_image(ctx, ls[1:], mu, cache))
    if cache is not None:
        cache[key] = vec
    return vec


def composition_entry(ctx, ls, mu, lam, cache=None):
    """Coefficient of [I_lam] in f_{1,l_1} ... f_{1,l_n} [I_mu]."""
    return composition_image(ctx, ls, mu, cache).get(MultiPartition(lam), ctx.zero)


def varpi_entry(ctx, ls, mu, lam, cache=None):
    """varpi_n(z^l)(tau_{mu,lam}) a_{mu,lam}."""
    return _varpi(ctx, ls, cache).evaluate(box_roots(ctx, mu, lam)) * gamma_coeff(ctx, mu, lam)


def _varpi(ctx, ls, cache):
    key = tuple(ls)
    rat = None if cache is None else cache.get(key)
    if rat is None:
        rat = varpi(ctx, monomial(ctx, ls), len(ls))
        if cache is not None:
            cache[key] = rat
    return rat


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _report(ctx, name, grade, bad):
    status = "fail" if bad else "pass"
    return RelationReport(name, ctx.r, grade, status, _regime(ctx), bad[0] if bad else None)


def _witness(ctx, mu, lam, lhs, rhs):
    return {"source": mu.text(), "target": lam.text(), "lhs": ctx.fmt(lhs), "rhs": ctx.fmt(rhs)}


def _sources(ctx, mu_max):
    return [mu for k in range(mu_max + 1) for mu in enumerate_multipartitions(ctx.r, k)]


class ChainSum:
    """Entries of f_{1,l_1} ... f_{1,l_n} from mu to lam as a sum over chains.

    Each saturated chain mu = nu_0 < nu_1 < ... < nu_n = lam contributes the
    product of the f_{1,0} entries along it times the box roots raised to the
    exponents, the box of nu_1 / nu_0 carrying l_n.  In exact mode the chain
    weights are brought to one denominator so that each entry is a single
    polynomial sum.
    """

    def __init__(self, ctx, mu, lam):
        self.ctx = ctx
        m = model(ctx)
        n = lam.size - mu.size
        chains = [(mu, ctx.one, ())]
        for _ in range(n):
            nxt = []
            for nu, w, roots in chains:
                col = m.f(1, 0).column(nu)
                for a, s, big in nu.add_boxes():
                    if big in col and lam.contains(big):
                        nxt.append((big, w * col[big], roots + (m.box_root(a, s),)))
            chains = nxt
        self.exact = ctx.mode == "exact"
        if self.exact:
            den = ctx.one.den
            for _, w, _ in chains:
                den = den * (w.den // den.gcd(w.den))
            self.den = den
            self.terms = [(w.num * (den // w.den), [c.num for c in roots]) for _, w, roots in chains]
        else:
            self.terms = [(w, roots) for _, w, roots in chains]

    def entry(self, ls):
        """Numerator over :attr:`den` (exact) or the value (point mode)."""
        total = None
        for w, roots in self.terms:
            term = w
            for c, l in zip(roots, reversed(ls)):
                if l:
                    term = term * c ** l
            total = term if total is None else total + term
        if total is None:
            return self.ctx.one.num * 0 if self.exact else self.ctx.zero
        return total

    def value(self, ls):
        if self.exact:
            return RatFunc(self.entry(ls), self.den, self.ctx.field)
        return self.entry(ls)

    def equals(self, ls, num, den, coeff):
        """Whether the entry equals (num / den) * coeff, without reducing fractions."""
        if self.exact:
            return self.entry(ls) * den.num * coeff.den == num.num * coeff.num * self.den
        return self.entry(ls) * den == num * coeff


def check_matrix_elements(ctx, n_max, l_max, mu_max=2):
    """f_{1,l_1}...f_{1,l_n} entries against varpi_n(z^l)(tau) a_{mu,lam}."""
    reports = []
    cache = {}
    chains = {}
    den_values = {}
    for n in range(1, n_max + 1):
        for ls in product(range(l_max + 1), repeat=n):
            rat = _varpi(ctx, ls, cache)
            for mu in _sources(ctx, mu_max):
                bad = []
                for lam in covers(mu, n):
                    if (mu, lam) not in chains:
                        chains[(mu, lam)] = ChainSum(ctx, mu, lam)
                        den_values[(mu, lam)] = rat.ring.evaluate(rat.den, box_roots(ctx, mu, lam))
                    chain = chains[(mu, lam)]
                    num, den = rat.parts(box_roots(ctx, mu, lam), den_values[(mu, lam)] or None)
                    coeff = gamma_coeff(ctx, mu, lam)
                    if not chain.equals(ls, num, den, coeff):
                        bad.append(_witness(ctx, mu, lam, chain.value(ls), num / den * coeff))
                name = "matrix f" + "".join(f"(1,{l})" for l in ls)
                reports.append(_report(ctx, name, mu.size, bad))
    return reports


def _compare_on_sources(ctx, name, lhs, rhs, sources):
    reports = []
    for mu in sources:
        a = lhs.column(mu)
        b = rhs.column(mu)
        bad = []
        for lam in sorted(set(a) | set(b), key=lambda k: k.text()):
            va, vb = a.get(lam, ctx.zero), b.get(lam, ctx.zero)
            if va != vb:
                bad.append(_witness(ctx, mu, lam, va, vb))
        reports.append(_report(ctx, name, mu.size, bad))
    return reports


def _words(l_max, n):
    return list(product(range(l_max + 1), repeat=n))


def check_homomorphism(ctx, n_max, l_max, mu_max=2):
    """shuffle_operator(P * Q) equals shuffle_operator(Q) composed after shuffle_operator(P)."""
    reports = []
    sources = _sources(ctx, mu_max)
    m = model(ctx)
    # generators: theta_l goes to f_{1,l}
    for l in range(l_max + 1):
        op = shuffle_operator(ctx, theta(ctx, l))
        reports += _compare_on_sources(ctx, f"shuffle theta_{l} = f(1,{l})", op, m.f(1, l), sources)
    elements = {}
    for n in range(1, n_max):
        for ls in _words(l_max, n):
            elements[ls] = shuffle_monomial(ctx, ls)
    for ls, P in elements.items():
        for ks, Q in elements.items():
            if len(ls) + len(ks) > n_max:
                continue
            lhs = shuffle_operator(ctx, shuffle_product(P, Q))
            rhs = shuffle_operator(ctx, Q) @ shuffle_operator(ctx, P)
            name = f"shuffle theta{list(ls)} * theta{list(ks)} reversed"
            reports += _compare_on_sources(ctx, name, lhs, rhs, sources)
    return reports


def check_associativity(ctx, l_max=2):
    reports = []
    for ls in product(range(l_max + 1), repeat=3):
        a, b, c = (theta(ctx, l) for l in ls)
        left = shuffle_product(shuffle_product(a, b), c)
        right = shuffle_product(a, shuffle_product(b, c))
        bad = [] if left == right else [{"lhs": str(left.poly), "rhs": str(right.poly)}]
        reports.append(_report(ctx, f"associativity theta{list(ls)}", 3, bad))
    return reports


def check_tau(ctx, l_max=3):
    """Group law, automorphism property and binomial expansion of tau_u."""
    ring = shuffle_ring(ctx)
    reports = []
    for l in range(l_max + 1):
        P = theta(ctx, l)
        lhs = tau_automorphism(ring.u, tau_automorphism(ring.v, P))
        rhs = tau_automorphism(ring.u + ring.v, P)
        bad = [] if lhs == rhs else [{"lhs": str(lhs.poly), "rhs": str(rhs.poly)}]
        reports.append(_report(ctx, f"tau group law theta_{l}", 1, bad))
        expansion = theta(ctx, 0).scaled(ring.zero)
        for i in range(l + 1):
            expansion = expansion + theta(ctx, i).scaled(comb(l, i) * ring.u ** (l - i))
        got = tau_automorphism(ring.u, P)
        bad = [] if got == expansion else [{"lhs": str(got.poly), "rhs": str(expansion.poly)}]
        reports.append(_report(ctx, f"tau binomial theta_{l}", 1, bad))
    for a, b in product(range(min(l_max, 2) + 1), repeat=2):
        P, Q = theta(ctx, a), theta(ctx, b)
        lhs = tau_automorphism(ring.u, shuffle_product(P, Q))
        rhs = shuffle_product(tau_automorphism(ring.u, P), tau_automorphism(ring.u, Q))
        bad = [] if lhs == rhs else [{"lhs": str(lhs.poly), "rhs": str(rhs.poly)}]
        reports.append(_report(ctx, f"tau automorphism theta_{a} * theta_{b}", 2, bad))
    return reports


def power_sum_action(P, l):
    """p_l(z_1..z_n) P."""
    ring = P.ring
    p = ring.zero
    for i in range(P.n):
        p = p + ring.z[i] ** l
    return ShufflePoly(ring, P.n, p * P.poly, check=False)


def check_wilson(ctx, l_max=3, mu_max=2):
    """p_l acts as theta_k -> theta_{k+l} on both sides."""
    reports = []
    m = model(ctx)
    sources = _sources(ctx, mu_max)
    for l in range(1, l_max + 1):
        for k in range(l_max + 1):
            got = power_sum_action(theta(ctx, k), l)
            bad = [] if got == theta(ctx, k + l) else [{"lhs": str(got.poly), "rhs": str(theta(ctx, k + l).poly)}]
            reports.append(_report(ctx, f"wilson shuffle p_{l} theta_{k}", 1, bad))
            for mu in sources:
                bad = []
                col = m.f(1, k).column(mu)
                target = m.f(1, k + l).column(mu)
                for lam in covers(mu, 1):
                    p = sum((z ** l for z in box_roots(ctx, mu, lam)), ctx.zero)
                    lhs = p * col.get(lam, ctx.zero)
                    rhs = target.get(lam, ctx.zero)
                    if lhs != rhs:
                        bad.append(_witness(ctx, mu, lam, lhs, rhs))
                reports.append(_report(ctx, f"wilson operator p_{l} f(1,{k})", mu.size, bad))
        for a, b in product(range(2), repeat=2):
            P = shuffle_monomial(ctx, (a, b))
            lhs = power_sum_action(P, l)
            rhs = shuffle_monomial(ctx, (a + l, b)) + shuffle_monomial(ctx, (a, b + l))
            bad = [] if lhs == rhs else [{"lhs": str(lhs.poly), "rhs": str(rhs.poly)}]
            reports.append(_report(ctx, f"wilson shuffle p_{l} theta{[a, b]}", 2, bad))
            for mu in sources[:3]:
                bad = []
                for lam in covers(mu, 2):
                    p = sum((z ** l for z in box_roots(ctx, mu, lam)), ctx.zero)
                    lhs_v = p * composition_entry(ctx, (a, b), mu, lam)
                    rhs_v = composition_entry(ctx, (a + l, b), mu, lam) + composition_entry(ctx, (a, b + l), mu, lam)
                    if lhs_v != rhs_v:
                        bad.append(_witness(ctx, mu, lam, lhs_v, rhs_v))
                reports.append(_report(ctx, f"wilson operator p_{l} f(1,{a})f(1,{b})", mu.size, bad))
    return reports


def check_shuffle_iso(ctx, n_max=3, l_max=3, mu_max=2):
    """The full shuffle suite: matrix elements, products, associativity, tau, Wilson lines."""
    reports = check_matrix_elements(ctx, n_max, l_max, mu_max)
    reports += check_homomorphism(ctx, n_max, min(l_max, 1), mu_max)
    reports += check_associativity(ctx, min(l_max, 2))
    reports += check_tau(ctx, l_max)
    reports += check_wilson(ctx, l_max, mu_max)
    return reports
