"""Free-field realization: Fock spaces, Miura currents, the contravariant form and AGT.

The Fock space pi_beta of r free bosons has highest-weight vector |beta>
with ``<b^{(i)}, beta> = -eps_i / kappa + (i - 1) xi / kappa`` and
commutators ``[b_l^{(i)}, b_{-h}^{(j)}] = l delta_ij delta_lh / kappa``.

Currents are stored as :class:`FieldExpr`, sums of normally ordered
products of derivatives of ``h^{(i)}(z)`` or ``b^{(i)}(z)``.  The Miura
product ``-kappa :prod_i (Q d + h^{(i)}(z)):`` is expanded with
``(Q d)^p F = sum_j C(p, j) Q^j (d^j F) (Q d)^{p-j}`` and the coefficient of
``(Q d)^{r-d}`` gives ``W_d(z)``; ``W_0 = 1`` and ``W_1 = J = sum_i b^{(i)}``.
"""

from math import comb

from .bosons import BosonSpace
from .linalg import LinearOperator, commutator, scalar_operator, solve_linear, vec_axpy
from .localization import gaiotto, nekrasov
from .partitions import MultiPartition, enumerate_multipartitions
from .scalars import DegeneratePointError
from .shc import (CommutatorSH, RelationReport, _regime, _zero_operator, compare_operators,
                  relation_suite, representation)


# ---------------------------------------------------------------------------
# Fock space
# ---------------------------------------------------------------------------

def highest_weight(ctx):
    """The zero modes <b^{(i)}, beta> = -eps_i / kappa + (i - 1) xi / kappa."""
    return [(-ctx.eps[i] + i * ctx.xi) / ctx.kappa for i in range(ctx.r)]


def fock_space(ctx):
    """The cached :class:`BosonSpace` for pi_beta."""
    space = ctx.__dict__.get("_fock_space")
    if space is None:
        space = BosonSpace(ctx, zero_modes=highest_weight(ctx))
        ctx.__dict__["_fock_space"] = space
    return space


class FockVector(dict):
    """Coefficients in the boson monomial basis of one grade of pi_beta."""

    def __init__(self, grade, coeffs=()):
        super().__init__()
        self.grade = grade
        for key, c in dict(coeffs).items():
            key = MultiPartition(key)
            if key.size != grade:
                raise ValueError(f"{key.text()} does not have grade {grade}")
            if c:
                self[key] = c

    def to_json(self, ctx):
        return {"grade": self.grade,
                "terms": [{"modes": key.text(), "coeff": ctx.fmt(c)} for key, c in self.items()]}


def boson_action(ctx, i, l, v):
    """b^{(i)}_l v."""
    return FockVector(v.grade - l, fock_space(ctx).mode(i, l).apply(v))


def vacuum(ctx):
    return FockVector(0, fock_space(ctx).vacuum())


# ---------------------------------------------------------------------------
# field expressions and the Miura transform
# ---------------------------------------------------------------------------

class FieldExpr:
    """Sum of normally ordered products of current derivatives.

    ``terms`` maps a sorted tuple of factors ``(colour, m)``, standing for
    ``d^m h^{(colour)}(z)`` or ``d^m b^{(colour)}(z)`` according to
    ``basis``, to its coefficient.  The empty tuple is the identity field.
    """

    def __init__(self, terms, basis="b"):
        self.basis = basis
        self.terms = {}
        for key, c in dict(terms).items():
            if c != 0:
                key = tuple(sorted(key))
                self.terms[key] = self.terms[key] + c if key in self.terms else c
        self.terms = {k: c for k, c in self.terms.items() if c != 0}

    @staticmethod
    def weight(key):
        """Conformal weight of a product: sum of (1 + m)."""
        return sum(1 + m for _, m in key)

    def __add__(self, other):
        if other.basis != self.basis:
            raise ValueError("cannot add fields in different bases")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return FieldExpr(out, self.basis)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return FieldExpr({k: c * v for k, v in self.terms.items()}, self.basis)

    def __mul__(self, other):
        """Normally ordered product."""
        if other.basis != self.basis:
            raise ValueError("cannot multiply fields in different bases")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                out[key] = out[key] + c1 * c2 if key in out else c1 * c2
        return FieldExpr(out, self.basis)

    def __eq__(self, other):
        return isinstance(other, FieldExpr) and self.basis == other.basis and self.terms == other.terms

    __hash__ = None

    def in_bosons(self, ctx):
        """Substitute h^{(i)} = b^{(i)} - J / r."""
        if self.basis == "b":
            return self
        r = ctx.r
        out = FieldExpr({}, "b")
        for key, c in self.terms.items():
            prod = FieldExpr({(): c}, "b")
            for i, m in key:
                lin = {}
                for a in range(1, r + 1):
                    coeff = (ctx.one if a == i else ctx.zero) - ctx.one / r
                    if coeff:
                        lin[((a, m),)] = coeff
                prod = prod * FieldExpr(lin, "b")
            out = out + prod
        return out

    def __repr__(self):
        return f"FieldExpr({self.basis}, {self.terms})"


def current(ctx, colour, m=0, basis="b"):
    return FieldExpr({((colour, m),): ctx.one}, basis)


def total_current(ctx):
    """J(z) = sum_i b^{(i)}(z)."""
    return FieldExpr({((a, 0),): ctx.one for a in range(1, ctx.r + 1)}, "b")


def rho_current(ctx, m=0):
    """d^m rho(z) with rho = sum_i (r/2 - i + 1/2) b^{(i)}."""
    r = ctx.r
    return FieldExpr({((i, m),): ctx.one * (r - 2 * i + 1) / 2 for i in range(1, r + 1)}, "b")


def miura_operator(ctx):
    """The coefficients F_p of :prod_i (Q d + h^{(i)}): = sum_p F_p (Q d)^p, in the h basis."""
    Q = -ctx.xi / ctx.kappa
    ops = [FieldExpr({(): ctx.one}, "h")]
    for i in range(1, ctx.r + 1):
        new = [FieldExpr({}, "h") for _ in range(len(ops) + 1)]
        for p, F in enumerate(ops):
            new[p + 1] = new[p + 1] + F
            for j in range(p + 1):
                factor = current(ctx, i, j, "h").scale(comb(p, j) * Q ** j)
                new[p - j] = new[p - j] + F * factor
        ops = new
    return ops


def miura(ctx, d):
    """W_d(z) as a field in the b basis (W_0 = 1, W_1 = J)."""
    r = ctx.r
    if not 0 <= d <= r:
        raise ValueError(f"d = {d} is outside 0..{r}")
    if d == 0:
        return FieldExpr({(): ctx.one}, "b")
    if d == 1:
        return total_current(ctx)
    store = ctx.__dict__.setdefault("_miura_fields", {})
    if d not in store:
        ops = miura_operator(ctx)
        store[d] = ops[r - d].scale(-ctx.kappa).in_bosons(ctx)
    return store[d]


def leading_symbol(ctx, d):
    """-kappa sum_s (-r)^{s-d} C(r-s, r-d) sum_{i_1<...<i_s} :J^{d-s} b^{(i_1)}...b^{(i_s)}:."""
    from itertools import combinations
    r = ctx.r
    J = total_current(ctx)
    out = FieldExpr({}, "b")
    for s in range(0, d + 1):
        coeff = -ctx.kappa * comb(r - s, r - d) * ctx.one / (-r) ** (d - s)
        for idx in combinations(range(1, r + 1), s):
            prod = FieldExpr({(): coeff}, "b")
            for _ in range(d - s):
                prod = prod * J
            for i in idx:
                prod = prod * current(ctx, i)
            out = out + prod
    return out


def top_order_part(field):
    """The terms without derivatives whose number of factors equals the weight."""
    top = max((len(k) for k in field.terms), default=0)
    return FieldExpr({k: c for k, c in field.terms.items()
                      if len(k) == top and all(m == 0 for _, m in k)}, field.basis)


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def _falling(k, m):
    """Coefficient of b_k in the mode expansion of d^m b(z): (-k-1)(-k-2)...(-k-m)."""
    out = 1
    for t in range(1, m + 1):
        out *= -k - t
    return out


def field_mode(ctx, field, l, name=""):
    """The mode of ``field`` at z^{-l-w} as an operator on pi_beta.

    Each term is read with its own conformal weight ``w``: a product of
    ``d^{m_j} b(z)`` contributes the modes b_{k_1} ... b_{k_p} with
    ``sum k_j = l``.
    """
    space = fock_space(ctx)

    def col(mp):
        n = mp.size
        target = n - l
        out = {}
        if target < 0:
            return out
        start = {mp: ctx.one}
        for key, c in field.terms.items():
            if not key:
                if l == 0:
                    vec_axpy(out, c, start)
                continue
            _enumerate_modes(space, key, 0, l, [], c, mp, target, out)
        return out
    return LinearOperator(col, -l, name)


def _enumerate_modes(space, key, j, remaining, chosen, coeff, mp, target, out):
    colour, m = key[j]
    last = j == len(key) - 1
    if last:
        candidates = [remaining]
    else:
        parts = set(mp[colour - 1])
        candidates = sorted(parts) + [0] + list(range(-target, 0))
    for k in candidates:
        if k > 0 and k not in mp[colour - 1]:
            continue
        if k < 0 and -k > target:
            continue
        f = _falling(k, m)
        if not f:
            continue
        word = chosen + [(colour, k)]
        if last:
            img = space.apply_word(space.normal_word(word), {mp: space.ctx.one})
            if img:
                vec_axpy(out, coeff * f, img)
        else:
            _enumerate_modes(space, key, j + 1, remaining - k, word, coeff * f, mp, target, out)


def w_mode(ctx, d, l):
    """W_{d,l} on pi_beta (grade shift -l)."""
    store = ctx.__dict__.setdefault("_w_modes", {})
    key = (d, l)
    if key not in store:
        store[key] = field_mode(ctx, miura(ctx, d), l, name=f"W({d},{l})")
    return store[key]


def highest_weight_value(ctx, d):
    """w_d(beta) for d >= 1."""
    from itertools import combinations
    beta = highest_weight(ctx)
    if d == 1:
        total = ctx.zero
        for bi in beta:
            total = total + bi
        return total
    mean = ctx.zero
    for bi in beta:
        mean = mean + bi
    mean = mean / ctx.r
    hw = [bi - mean for bi in beta]
    total = ctx.zero
    for idx in combinations(range(ctx.r), d):
        prod = ctx.one
        for t, i in enumerate(idx, start=1):
            prod = prod * (hw[i] + (d - t) * ctx.xi / ctx.kappa)
        total = total + prod
    return -ctx.kappa * total


def central_charge_k(ctx):
    """C_k = (r-1) - r(r^2-1)(k+r-1)^2/(k+r) with k + r = kappa."""
    r, kappa = ctx.r, ctx.kappa
    return (r - 1) - r * (r * r - 1) * (kappa - 1) ** 2 / kappa + ctx.zero


def central_charge_Q(ctx):
    """C_Q = (r-1) - r(r^2-1) kappa Q^2 with Q = -xi / kappa."""
    r, kappa = ctx.r, ctx.kappa
    Q = -ctx.xi / kappa
    return (r - 1) - r * (r * r - 1) * kappa * Q * Q + ctx.zero


# ---------------------------------------------------------------------------
# the free-field representation of the D_{l,d}
# ---------------------------------------------------------------------------

def _one_colour_laplace(ctx, space, i):
    """kappa LB on colour i: xi kappa/2 sum (l-1) b_{-l} b_l + kappa^2/2 sum (b_{-l-k} b_l b_k + b_{-l} b_{-k} b_{l+k})."""
    kappa, xi = ctx.kappa, ctx.xi

    def col(mp):
        out = {}
        start = {mp: ctx.one}
        parts = sorted(set(mp[i - 1]))
        for l in parts:
            if l > 1:
                vec_axpy(out, xi * kappa * (l - 1) / 2, space.apply_word([(i, -l), (i, l)], start))
        for l in parts:
            for k in parts:
                vec_axpy(out, kappa * kappa / 2,
                         space.apply_word([(i, -l - k), (i, l), (i, k)], start))
        for n in parts:
            for l in range(1, n):
                vec_axpy(out, kappa * kappa / 2,
                         space.apply_word([(i, -l), (i, l - n), (i, n)], start))
        return out
    return LinearOperator(col, 0, f"kappaLB{i}")


def _one_colour_number(ctx, space, i):
    """kappa sum_{l >= 1} b^{(i)}_{-l} b^{(i)}_l."""
    def col(mp):
        out = {}
        start = {mp: ctx.one}
        for l in sorted(set(mp[i - 1])):
            vec_axpy(out, ctx.kappa, space.apply_word([(i, -l), (i, l)], start))
        return out
    return LinearOperator(col, 0, f"N{i}")


class FockSH(CommutatorSH):
    """The representation rho^{(1^r)} of D_{l,d} on pi_beta.

    Single-colour images: D_{l,0} = (-kappa)^l b_{-l}, D_{-l,0} = (-1)^l b_l,
    D_{0,1} = kappa sum b_{-l} b_l and D_{0,2} = kappa LB - eps D_{0,1}.  The
    coproduct adds the coupling xi sum_{i<j} sum_l l kappa^{1-l} D^{(i)}_{-l,0} D^{(j)}_{l,0}
    to D_{0,2} and is primitive on D_{l,0} and D_{0,1}.
    """

    def __init__(self, ctx):
        super().__init__(ctx, ctx.c)
        self.r = ctx.r
        self.space = fock_space(ctx)

    def colour_D(self, i, l, d):
        """Single-colour image of D_{l,0} (d = 0), D_{0,1} or D_{0,2} on colour i."""
        ctx, space = self.ctx, self.space
        if d == 0:
            mode = space.mode(i, -l)
            return mode.scaled((-ctx.kappa) ** l if l > 0 else ctx.one * (-1) ** (-l))
        if (l, d) == (0, 1):
            return _one_colour_number(ctx, space, i)
        if (l, d) == (0, 2):
            return _one_colour_laplace(ctx, space, i) - _one_colour_number(ctx, space, i).scaled(ctx.eps[i - 1])
        raise ValueError(f"no single-colour image for D({l},{d})")

    def coupling(self):
        ctx, r = self.ctx, self.r

        def col(mp):
            out = {}
            start = {mp: ctx.one}
            for i in range(1, r + 1):
                for j in range(i + 1, r + 1):
                    for l in sorted(set(mp[i - 1])):
                        lower = self.colour_D(i, -l, 0)
                        upper = self.colour_D(j, l, 0)
                        coeff = ctx.xi * l * ctx.kappa ** (1 - l)
                        vec_axpy(out, coeff, lower.apply(upper.apply(start)))
            return out
        return LinearOperator(col, 0, "coupling")

    def primitive(self, l, d):
        if d == 0 or (l, d) in ((0, 1), (0, 2)):
            total = None
            for i in range(1, self.r + 1):
                op = self.colour_D(i, l, d)
                total = op if total is None else total + op
            if (l, d) == (0, 2):
                total = total + self.coupling()
            if d == 0:
                total.shift = l
            return total
        return None


def freefield_rep(ctx):
    """The cached :class:`FockSH` of ``ctx``."""
    rep = ctx.__dict__.get("_fock_sh")
    if rep is None:
        rep = FockSH(ctx)
        ctx.__dict__["_fock_sh"] = rep
    return rep


def two_boson_D02(ctx):
    """rho^{(1^2)}(D_{0,2}) written out directly in the bosons (r = 2)."""
    if ctx.r != 2:
        raise ValueError("the explicit two-boson formula needs r = 2")
    space = fock_space(ctx)
    kappa, xi = ctx.kappa, ctx.xi

    def col(mp):
        out = {}
        start = {mp: ctx.one}
        grade = mp.size
        for i in (1, 2):
            for l in range(1, grade + 1):
                for k in range(1, grade + 1):
                    vec_axpy(out, kappa ** 2 / 2, space.apply_word([(i, -l - k), (i, l), (i, k)], start))
                    vec_axpy(out, kappa ** 2 / 2, space.apply_word([(i, -l), (i, -k), (i, l + k)], start))
                vec_axpy(out, kappa * xi * (l - 1) / 2, space.apply_word([(i, -l), (i, l)], start))
                vec_axpy(out, -kappa * ctx.eps[i - 1], space.apply_word([(i, -l), (i, l)], start))
        for l in range(1, grade + 1):
            vec_axpy(out, kappa * xi * l, space.apply_word([(2, -l), (1, l)], start))
        return out
    return LinearOperator(col, 0, "two_boson_D02")


# ---------------------------------------------------------------------------
# checks on the Fock side
# ---------------------------------------------------------------------------

def fock_relations(ctx, n_max, l_max):
    """The relation suite of the D_{l,d} on pi_beta, with c_l = p_l(eps)."""
    rep = freefield_rep(ctx)
    out = relation_suite(ctx, rep, n_max, l_max)
    for l in range(2, l_max + 1):
        for sgn in (1, -1):
            lhs = (commutator(rep.D(1, 1), rep.D(l - 1, 0)) if sgn > 0
                   else commutator(rep.D(-l + 1, 0), rep.D(-1, 1)))
            out += compare_operators(ctx, f"D({sgn * l},0) from the recursion",
                                     lhs.scaled(ctx.one / (l - 1)), rep.D(sgn * l, 0), n_max)
    return out


def heisenberg_fock(ctx, n_max, l_max):
    """[b_l^{(i)}, b_{-h}^{(j)}] = l delta_ij delta_lh / kappa on pi_beta."""
    space = fock_space(ctx)
    out = []
    for i in range(1, ctx.r + 1):
        for j in range(1, ctx.r + 1):
            for l in range(0, l_max + 1):
                for h in range(0, l_max + 1):
                    rhs = (scalar_operator(ctx.one * l / ctx.kappa)
                           if (i, l) == (j, h) and l else _zero_operator())
                    out += compare_operators(ctx, f"[b{i}({l}),b{j}({-h})]",
                                             commutator(space.mode(i, l), space.mode(j, -h)),
                                             rhs, n_max)
    return out


def highest_weight_checks(ctx, l_max):
    """W_{d,0}|beta> = w_d |beta> and W_{d,l}|beta> = 0 for 1 <= l <= l_max."""
    vac = vacuum(ctx)
    out = []
    for d in range(1, ctx.r + 1):
        for l in range(0, l_max + 1):
            image = w_mode(ctx, d, l).apply(vac)
            expect = {k: highest_weight_value(ctx, d) * c for k, c in vac.items()} if l == 0 else {}
            expect = {k: c for k, c in expect.items() if c}
            ok = image == expect
            witness = None if ok else {"d": d, "l": l, "image": {k.text(): ctx.fmt(c) for k, c in image.items()}}
            out.append(RelationReport(f"W({d},{l})|beta> = {'w_d|beta>' if l == 0 else '0'}",
                                      ctx.r, 0, "pass" if ok else "fail", _regime(ctx), witness))
    return out


def virasoro_check(ctx, l_max, n_max):
    """Virasoro bracket of the W_{2,l} with C_k, and the scalar identity C_k = C_Q."""
    out = []
    ck, cq = central_charge_k(ctx), central_charge_Q(ctx)
    out.append(RelationReport("C_k = C_Q", ctx.r, -1, "pass" if ck == cq else "fail", _regime(ctx),
                              None if ck == cq else {"C_k": ctx.fmt(ck), "C_Q": ctx.fmt(cq)}))
    for l in range(-l_max, l_max + 1):
        for k in range(-l_max, l_max + 1):
            if k < l:
                continue
            rhs = w_mode(ctx, 2, l + k).scaled(ctx.scalar(l - k))
            if l == -k and l ** 3 - l:
                rhs = rhs + scalar_operator((l ** 3 - l) * ck / 12)
            out += compare_operators(ctx, f"[W(2,{l}),W(2,{k})] Virasoro",
                                     commutator(w_mode(ctx, 2, l), w_mode(ctx, 2, k)), rhs, n_max)
    return out


def freefield_identity_checks(ctx, l_max, n_max):
    """rho(b_l) = J_l, rho(H_l) = kappa/2 sum :b^i b^i:_l + xi (l+1) rho_l, rho(L_l) = W_{2,l}.

    Runs in the x = 1 chart, where b_l and H_l are the dimensionless
    Heisenberg and Virasoro precursors.
    """
    ctx1 = ctx if ctx.x_one else ctx.chart_x1()
    rep = freefield_rep(ctx1)
    out = []
    b_sq = FieldExpr({}, "b")
    for i in range(1, ctx1.r + 1):
        b_sq = b_sq + current(ctx1, i) * current(ctx1, i)
    J = total_current(ctx1)
    H_field = b_sq.scale(ctx1.kappa / 2) - rho_current(ctx1, 1).scale(ctx1.xi)
    for l in range(-l_max, l_max + 1):
        out += compare_operators(ctx1, f"rho(b({l})) = J({l})", rep.b(l),
                                 field_mode(ctx1, J, l), n_max)
        out += compare_operators(ctx1, f"rho(H({l})) = free-field H({l})", rep.H(l),
                                 field_mode(ctx1, H_field, l), n_max)
        if ctx1.r >= 2:
            L = rep.H(l) - _b_square_mode(ctx1, rep, l).scaled(ctx1.kappa / (2 * ctx1.r))
            out += compare_operators(ctx1, f"rho(L({l})) = W(2,{l})", L, w_mode(ctx1, 2, l), n_max)
    return out


def _b_square_mode(ctx, rep, l):
    """sum_h :b_{l-h} b_h: built from the representation's b modes (creators left)."""
    def col(mp):
        out = {}
        start = {mp: ctx.one}
        bound = mp.size + abs(l) + 1
        for h in range(-bound, bound + 1):
            first, second = min(l - h, h), max(l - h, h)
            img = rep.b(second).apply(start)
            if img:
                vec_axpy(out, ctx.one, rep.b(first).apply(img))
        return out
    return LinearOperator(col, -l, f"bb({l})")


# ---------------------------------------------------------------------------
# contravariant form
# ---------------------------------------------------------------------------

def adjoint_sign(r, d, l):
    """Sign s in B(W_{d,-l} u, v) = s B(u, W_{d,l} v)."""
    return (-1) ** (r * l) if d == 1 else (-1) ** (r * l + d)


class GramForm:
    """The contravariant form on one grade: ``matrix[i][j] = B(basis[i], basis[j])``."""

    def __init__(self, grade, basis, matrix):
        self.grade = grade
        self.basis = basis
        self.matrix = matrix
        self.index = {k: i for i, k in enumerate(basis)}

    def entry(self, u, v):
        return self.matrix[self.index[u]][self.index[v]]

    def pair(self, ctx, u, v):
        total = ctx.zero
        for a, ca in u.items():
            i = self.index[a]
            for b, cb in v.items():
                val = self.matrix[i][self.index[b]]
                if val:
                    total = total + ca * cb * val
        return total

    def is_symmetric(self):
        n = len(self.basis)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))


def contravariant_form(ctx, n):
    """B on grade n, fixed by B(|beta>, |beta>) = 1 and the adjoint rule of the W_{d,l}.

    The overdetermined system is solved exactly; inconsistency raises
    ``ValueError`` and a rank deficit raises :class:`DegeneratePointError`.
    """
    store = ctx.__dict__.setdefault("_gram_forms", {})
    if n in store:
        return store[n]
    r = ctx.r
    basis = enumerate_multipartitions(r, n)
    if n == 0:
        form = GramForm(0, basis, [[ctx.one]])
        store[0] = form
        return form
    index = {k: i for i, k in enumerate(basis)}
    rows, rhs = [], []
    for d in range(1, r + 1):
        for l in range(1, n + 1):
            lower = contravariant_form(ctx, n - l)
            sign = adjoint_sign(r, d, l)
            down, up = w_mode(ctx, d, -l), w_mode(ctx, d, l)
            up_cols = [up.column(v) for v in basis]
            for w in lower.basis:
                row = [ctx.zero] * len(basis)
                for u, c in down.column(w).items():
                    row[index[u]] = c
                rows.append(row)
                rhs.append([sign * _pair_basis(ctx, lower, w, col) for col in up_cols])
    res = solve_linear(rows, rhs, ctx.zero)
    if res.status == "inconsistent":
        raise ValueError(f"the adjoint constraints are inconsistent at grade {n}")
    if res.status != "unique":
        raise DegeneratePointError(f"the contravariant form is not determined at grade {n}")
    # res.solution[j] is the column B(., basis[j])
    matrix = [[res.solution[j][i] for j in range(len(basis))] for i in range(len(basis))]
    form = GramForm(n, basis, matrix)
    store[n] = form
    return form


def _pair_basis(ctx, form, w, vec):
    total = ctx.zero
    i = form.index[w]
    for t, c in vec.items():
        val = form.matrix[i][form.index[t]]
        if val:
            total = total + c * val
    return total


# ---------------------------------------------------------------------------
# Whittaker vector and the AGT comparison
# ---------------------------------------------------------------------------

def whittaker_character(ctx, d, l):
    """chi(W_{r,1}) = y^{1-r} x^{-1}; every other chi(W_{d,l}) vanishes."""
    if (d, l) == (ctx.r, 1):
        return ctx.one / (ctx.y ** (ctx.r - 1) * ctx.x)
    return ctx.zero


def whittaker(ctx, n, character=None):
    """G'_n with W_{d,l} G'_n = chi(W_{d,l}) G'_{n-l} for d in 1..r, 1 <= l <= n; G'_0 = |beta>."""
    character = whittaker_character if character is None else character
    store = ctx.__dict__.setdefault("_whittaker", {})
    key = (n, character)
    if key in store:
        return store[key]
    if n == 0:
        vec = vacuum(ctx)
        store[key] = vec
        return vec
    basis = enumerate_multipartitions(ctx.r, n)
    rows, rhs = [], []
    for d in range(1, ctx.r + 1):
        for l in range(1, n + 1):
            op = w_mode(ctx, d, l)
            chi = character(ctx, d, l)
            prev = whittaker(ctx, n - l, character) if chi else {}
            cols = [op.column(u) for u in basis]
            for t in enumerate_multipartitions(ctx.r, n - l):
                rows.append([col.get(t, ctx.zero) for col in cols])
                rhs.append(chi * prev.get(t, ctx.zero) if chi else ctx.zero)
    res = solve_linear(rows, rhs, ctx.zero)
    if res.status == "inconsistent":
        raise ValueError(f"no Whittaker vector at grade {n}")
    if res.status != "unique":
        raise DegeneratePointError(f"the Whittaker vector is not unique at grade {n}")
    vec = FockVector(n, dict(zip(basis, res.solution)))
    store[key] = vec
    return vec


def agt_compare(ctx, N):
    """ratio_n = B(G'_n, G'_n) / Z_n, sigma = ratio_1, and whether ratio_n = sigma^n."""
    Z = nekrasov(ctx, N)
    ratios = []
    for n in range(N + 1):
        G = whittaker(ctx, n)
        norm = contravariant_form(ctx, n).pair(ctx, G, G)
        ratios.append(norm / Z[n])
    sigma = ratios[1] if N >= 1 else ctx.one
    grades = []
    for n, ratio in enumerate(ratios):
        grades.append({"n": n, "ratio": ratio, "match": ratio == sigma ** n})
    return {"sigma": sigma, "grades": grades}


def agt_json(ctx, N):
    report = agt_compare(ctx, N)
    return {"sigma": ctx.fmt(report["sigma"]),
            "grades": [{"n": g["n"], "ratio": ctx.fmt(g["ratio"]), "match": g["match"]}
                       for g in report["grades"]]}


def agt_reports(ctx, N):
    """The AGT comparison as relation reports, one per grade n >= 2."""
    report = agt_compare(ctx, N)
    out = []
    for g in report["grades"]:
        if g["n"] < 2:
            continue
        witness = None if g["match"] else {"ratio": ctx.fmt(g["ratio"]),
                                           "sigma^n": ctx.fmt(report["sigma"] ** g["n"])}
        out.append(RelationReport("B(G'_n, G'_n) / Z_n = sigma^n", ctx.r, g["n"],
                                  "pass" if g["match"] else "fail", _regime(ctx), witness))
    return out


def transport_check(ctx, n_max):
    """Rank one, x = 1 chart: carry the Gaiotto state to the Fock space along b_{-mu}.

    G_n is written as sum_mu T_mu b_{-mu}[I_empty] with the Heisenberg
    operators of the fixed-point module, T_n = sum_mu T_mu b_{-mu}|beta> is
    checked against the Fock Whittaker conditions with chi'(b_1) = 1/kappa,
    and G'_n = (chi/chi')^n T_n is compared with :func:`whittaker`.
    """
    if ctx.r != 1:
        raise ValueError("the transport check is for r = 1")
    ctx1 = ctx if ctx.x_one else ctx.chart_x1()
    loc = representation(ctx1)
    space = fock_space(ctx1)
    empty = MultiPartition([()])
    chi_prime = ctx1.one / ctx1.kappa
    ratio = whittaker_character(ctx1, 1, 1) / chi_prime
    out = []
    transported = {}
    for n in range(n_max + 1):
        basis = enumerate_multipartitions(1, n)
        images = []
        for mu in basis:
            vec = {empty: ctx1.one}
            for part in mu[0]:
                vec = loc.b(-part).apply(vec)
            images.append(vec)
        G = gaiotto(ctx1, n)
        rows = [[img.get(lam, ctx1.zero) for img in images] for lam in basis]
        res = solve_linear(rows, [G.get(lam, ctx1.zero) for lam in basis], ctx1.zero)
        if res.status != "unique":
            raise DegeneratePointError(f"b_(-mu)[I_empty] is not a basis at grade {n}")
        T = FockVector(n, dict(zip(basis, res.solution)))
        transported[n] = T
        witness = None
        for l in range(1, n + 1):
            image = space.mode(1, l).apply(T)
            expect = {k: chi_prime * c for k, c in transported[n - 1].items()} if l == 1 else {}
            if image != {k: c for k, c in expect.items() if c}:
                witness = {"l": l}
                break
        target = whittaker(ctx1, n)
        scaled = {k: ratio ** n * c for k, c in T.items()}
        if witness is None and dict(target) != scaled:
            witness = {"G'": "differs from (chi/chi')^n T"}
        out.append(RelationReport("Gaiotto state transported to pi_beta is Whittaker", 1, n,
                                  "fail" if witness else "pass", _regime(ctx1), witness))
    return out
