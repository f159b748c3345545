"""Symmetric functions, the Laplace-Beltrami operator and Jack polynomials.

Symmetric functions are stored in the power-sum basis.  The Jack
polynomial ``J_lambda`` is computed as the eigenvector of the
Laplace-Beltrami operator with eigenvalue ``(n(lambda') - kappa n(lambda)) / kappa``
whose ``p_{(1^n)}`` coefficient is 1.  The module also builds the
generators D_{l,d} on symmetric functions from multiplication by p_1, the
derivative in p_1 and ``kappa`` times the Laplace-Beltrami operator, and
compares them with the fixed-point operators of the rank-one module.
"""

from collections import Counter
from math import factorial

from .linalg import LinearOperator, diagonal_operator, solve_linear
from .localization import model
from .partitions import MultiPartition, Partition, partitions_of
from .scalars import DegeneratePointError
from .shc import CommutatorSH, RelationReport, _regime


class SymFunc(dict):
    """Finitely supported map ``Partition -> scalar`` (coefficients of ``p_mu``)."""

    def __init__(self, coeffs=()):
        super().__init__()
        for mu, c in dict(coeffs).items():
            if c != 0:
                self[Partition(mu)] = c

    def grades(self):
        return sorted({mu.size for mu in self})

    def __add__(self, other):
        out = dict(self)
        for mu, c in other.items():
            out[mu] = out[mu] + c if mu in out else c
        return SymFunc(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SymFunc({mu: c * v for mu, v in self.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out = {}
        for mu, a in self.items():
            for nu, b in other.items():
                key = Partition(sorted(tuple(mu) + tuple(nu), reverse=True))
                out[key] = out[key] + a * b if key in out else a * b
        return SymFunc(out)

    def text(self, ctx):
        """``p111*(c) + p21*(c) + p3*(c)`` with parts concatenated."""
        keys = sorted(self, key=lambda mu: (mu.size, tuple(-p for p in mu)), reverse=True)
        keys = sorted(keys, key=lambda mu: mu.size)
        pieces = []
        for mu in keys:
            name = "p" + "".join(str(p) for p in mu) if mu else "1"
            pieces.append(f"{name}*({ctx.fmt(self[mu])})")
        return " + ".join(pieces) if pieces else "0"


def power_sum(l):
    """The power sum p_l (p_0 is taken to be 1)."""
    return SymFunc({Partition((l,) if l else ()): 1})


# ---------------------------------------------------------------------------
# operators on symmetric functions
# ---------------------------------------------------------------------------

def _drop(mu, l):
    parts = list(mu)
    parts.remove(l)
    return Partition(parts)


def _add(mu, *ls):
    return Partition(sorted(tuple(mu) + ls, reverse=True))


def _vec_add(out, key, val):
    cur = out.get(key)
    val = val if cur is None else cur + val
    if val:
        out[key] = val
    else:
        out.pop(key, None)


def p_multiplication(ctx, l):
    """Multiplication by p_l."""
    return LinearOperator(lambda mu: {_add(mu, l): ctx.one}, l, f"p{l}")


def p_derivative(ctx, l):
    """The derivative d/dp_l."""
    def col(mu):
        m = mu.count(l)
        return {_drop(mu, l): ctx.one * m} if m else {}
    return LinearOperator(col, -l, f"d/dp{l}")


def degree_operator(ctx):
    return diagonal_operator(lambda mu: ctx.scalar(mu.size), "deg")


def laplace_beltrami(ctx, N=None):
    """The operator

        xi sum_l (l-1) b_{-l} b_l / 2 + kappa sum_{l,k} (b_{-l-k} b_l b_k + b_{-l} b_{-k} b_{l+k}) / 2

    with ``b_{-l}`` = multiplication by p_l and ``b_l = l kappa^{-1} d/dp_l``.
    ``N`` is an optional grade ceiling.
    """
    kappa, xi = ctx.kappa, ctx.xi
    inv_k = ctx.one / kappa

    def col(mu):
        if N is not None and mu.size > N:
            raise ValueError(f"grade {mu.size} exceeds the ceiling {N}")
        out = {}
        counts = Counter(mu)
        diag = 0
        for l, m in counts.items():
            diag += l * (l - 1) * m
        if diag:
            _vec_add(out, mu, xi * inv_k * diag / 2)
        # join two parts: (1/2kappa) sum_{l,k} l k p_{l+k} d_l d_k
        parts = list(counts)
        for i, l in enumerate(parts):
            for k in parts[i:]:
                if l == k:
                    pairs = counts[l] * (counts[l] - 1)
                    if not pairs:
                        continue
                    coeff = l * k * pairs
                else:
                    coeff = 2 * l * k * counts[l] * counts[k]
                rest = _drop(_drop(mu, l), k)
                _vec_add(out, _add(rest, l + k), inv_k * coeff / 2)
        # split one part: (1/2) sum_{l,k} (l+k) p_l p_k d_{l+k}
        for n, m in counts.items():
            rest = _drop(mu, n)
            for l in range(1, n):
                _vec_add(out, _add(rest, l, n - l), ctx.one * (n * m) / 2)
        return out
    return LinearOperator(col, 0, "LB")


# ---------------------------------------------------------------------------
# Jack polynomials
# ---------------------------------------------------------------------------

class JackPoly:
    """A Jack polynomial: its partition and its power-sum expansion."""

    def __init__(self, lam, expansion, eigenvalue):
        self.lam = lam
        self.expansion = expansion
        self.eigenvalue = eigenvalue

    def text(self, ctx):
        return f"J[{','.join(str(p) for p in self.lam)}] = {self.expansion.text(ctx)}"


def lb_eigenvalue(ctx, lam):
    """(n(lambda') - kappa n(lambda)) / kappa."""
    lam = Partition(lam)
    return (lam.conjugate().n() - ctx.kappa * lam.n()) / ctx.kappa


def _cache(ctx, name):
    store = ctx.__dict__.get(name)
    if store is None:
        store = {}
        ctx.__dict__[name] = store
    return store


def jack(ctx, lam):
    """The Jack polynomial J_lam, normalized by [p_{(1^n)}] J_lam = 1.

    J_lam is the joint eigenvector of kappa LB = D_{0,2}, D_{0,3}, ... with
    eigenvalues sum_s c(s)^{l-1}.  The Laplace-Beltrami eigenvalue alone
    separates the partitions of n <= 5; from n = 6 on it can collide
    (for instance (4,1,1) and (3,3)), and higher D_{0,l} are added until the
    eigenvector is unique.
    """
    lam = Partition(lam)
    store = _cache(ctx, "_jack_cache")
    if lam in store:
        return store[lam]
    n = lam.size
    basis = partitions_of(n)
    ev = lb_eigenvalue(ctx, lam)
    if n == 0:
        out = JackPoly(lam, SymFunc({Partition(): ctx.one}), ev)
        store[lam] = out
        return out
    ones = Partition((1,) * n)
    rows = [[ctx.one if mu == ones else ctx.zero for mu in basis]]
    rhs = [ctx.one]
    sh = symmetric_sh(ctx)
    for l in range(2, max(n, 2) + 1):
        target = sekiguchi_eigenvalue(ctx, lam, l)
        mat = sh.D(0, l).matrix(basis, basis)
        for i, row in enumerate(mat):
            rows.append([row[j] - target if i == j else row[j] for j in range(len(basis))])
            rhs.append(ctx.zero)
        res = solve_linear(rows, rhs, ctx.zero)
        if res.status == "unique":
            break
        if res.status == "inconsistent":
            break
    if res.status != "unique":
        raise DegeneratePointError(
            f"the eigenvector of {lam.text()} is not unique at this point ({res.status})")
    out = JackPoly(lam, SymFunc(dict(zip(basis, res.solution))), ev)
    store[lam] = out
    return out


def jack_basis_coordinates(ctx, vec, n):
    """Coordinates of the grade-``n`` symmetric function ``vec`` in the Jack basis."""
    basis = partitions_of(n)
    jacks = [jack(ctx, lam).expansion for lam in basis]
    mat = [[j.get(mu, ctx.zero) for j in jacks] for mu in basis]
    rhs = [vec.get(mu, ctx.zero) for mu in basis]
    res = solve_linear(mat, rhs, ctx.zero)
    if res.status != "unique":
        raise DegeneratePointError("Jack polynomials are not a basis at this point")
    return {lam: c for lam, c in zip(basis, res.solution) if c != 0}


# ---------------------------------------------------------------------------
# Pieri rule and eigenvalues
# ---------------------------------------------------------------------------

def _hook_low(ctx, lam, s):
    return ctx.kappa * lam.leg(s) + (lam.arm(s) + 1)


def _hook_up(ctx, lam, s):
    return ctx.kappa * (lam.leg(s) + 1) + lam.arm(s)


def psi(ctx, mu, lam):
    """psi_{lam / mu}: hook ratios over the column and the row of the added box."""
    mu, lam = Partition(mu), Partition(lam)
    (new,) = [s for s in lam.boxes() if not mu.contains_box(s)]
    val = ctx.one
    for s in mu.boxes():
        if s.x == new.x:
            val = val * _hook_low(ctx, mu, s) / _hook_low(ctx, lam, s)
        elif s.y == new.y:
            val = val * _hook_up(ctx, mu, s) / _hook_up(ctx, lam, s)
    return val


def pieri(ctx, mu):
    """List of ``(lam, psi_{lam / mu})`` over the partitions covering ``mu``."""
    mu = Partition(mu)
    return [(mu.add_box(s), psi(ctx, mu, mu.add_box(s))) for s in mu.addable()]


def content_kappa(ctx, s):
    return s.x - ctx.kappa * s.y


def sekiguchi_eigenvalue(ctx, lam, l):
    """Eigenvalue of D_{0,l} on J_lam: sum over boxes of c(s)^{l-1}."""
    total = ctx.zero
    for s in Partition(lam).boxes():
        total = total + content_kappa(ctx, s) ** (l - 1)
    return total


# ---------------------------------------------------------------------------
# the generators on symmetric functions
# ---------------------------------------------------------------------------

def symmetric_sh(ctx):
    """The cached :class:`SymmetricSH` attached to ``ctx``."""
    sh = ctx.__dict__.get("_symmetric_sh")
    if sh is None:
        sh = SymmetricSH(ctx)
        ctx.__dict__["_symmetric_sh"] = sh
    return sh


class SymmetricSH(CommutatorSH):
    """D_{l,d} of the rank-one algebra at e_1 = 0, acting on symmetric functions.

    D_{1,0} is multiplication by p_1, D_{-1,0} is d/dp_1, D_{0,1} is the
    degree and D_{0,2} is kappa times the Laplace-Beltrami operator; the
    central parameters are c_0 = 1 and c_l = 0 for l >= 1.
    """

    def __init__(self, ctx):
        super().__init__(ctx, lambda l: ctx.one if l == 0 else ctx.zero)

    def primitive(self, l, d):
        ctx = self.ctx
        if (l, d) == (1, 0):
            return p_multiplication(ctx, 1)
        if (l, d) == (-1, 0):
            return p_derivative(ctx, 1)
        if (l, d) == (0, 1):
            return degree_operator(ctx)
        if (l, d) == (0, 2):
            return laplace_beltrami(ctx).scaled(ctx.kappa)
        return None


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _apply(op, f):
    return SymFunc(op.apply(dict(f)))


def check_eigenvalues(ctx, n_max, l_max):
    """D_{0,l} J_lam = sum c(s)^{l-1} J_lam with D_{0,l} built from the generators."""
    sh = symmetric_sh(ctx)
    out = []
    for n in range(n_max + 1):
        witness = None
        for lam in partitions_of(n):
            J = jack(ctx, lam).expansion
            for l in range(1, l_max + 1):
                ev = sekiguchi_eigenvalue(ctx, lam, l)
                diff = _apply(sh.D(0, l), J) - J.scale(ev)
                if diff:
                    witness = {"lambda": list(lam), "l": l}
                    break
            if witness:
                break
        out.append(RelationReport("D(0,l) J = sum c(s)^(l-1) J", 1, n,
                                  "fail" if witness else "pass", _regime(ctx), witness))
    return out


def check_pieri(ctx, n_max):
    """p_1 J_mu = sum psi_{lam/mu} J_lam for |mu| <= n_max."""
    out = []
    for n in range(n_max + 1):
        witness = None
        for mu in partitions_of(n):
            lhs = jack(ctx, mu).expansion * power_sum(1)
            rhs = SymFunc()
            for lam, c in pieri(ctx, mu):
                rhs = rhs + jack(ctx, lam).expansion.scale(c)
            if lhs - rhs:
                witness = {"mu": list(mu)}
                break
        out.append(RelationReport("p1 J_mu = sum psi J_lam", 1, n,
                                  "fail" if witness else "pass", _regime(ctx), witness))
    return out


def check_iso_fixedpoint(ctx, n_max, l_max):
    """Compare D_{1,l} on Jack polynomials with h_{1,l} on fixed points (e_1 = 0, x = 1).

    Also compares the eigenvalues of D_{0,l} with those of h_{0,l}.
    """
    ctx1 = ctx
    if not ctx1.x_one or not ctx1.e_zero:
        ctx1 = ctx.chart_x1().with_e_zero() if not ctx.x_one else ctx.with_e_zero()
    sh = symmetric_sh(ctx1)
    fp = model(ctx1)
    out = []
    for n in range(n_max + 1):
        witness = None
        for mu in partitions_of(n):
            J = jack(ctx1, mu).expansion
            src = MultiPartition([mu])
            for l in range(0, l_max + 1):
                image = jack_basis_coordinates(ctx1, _apply(sh.D(1, l), J), n + 1)
                loc = {lam[0]: c for lam, c in fp.h(1, l).column(src).items()}
                if image != loc:
                    bad = next(lam for lam in set(image) | set(loc)
                               if image.get(lam, 0) != loc.get(lam, 0))
                    witness = {"mu": list(mu), "lambda": list(bad), "l": l,
                               "jack side": ctx1.fmt(image.get(bad, 0)),
                               "fixed points": ctx1.fmt(loc.get(bad, 0))}
                    break
            for l in range(1, l_max + 2):
                loc = fp.h(0, l).column(src).get(src, ctx1.zero)
                if loc != sekiguchi_eigenvalue(ctx1, mu, l):
                    witness = {"mu": list(mu), "l": l, "diagonal": True}
            if witness:
                break
        out.append(RelationReport("J_lam -> [I_lam] intertwines D(1,l) and D(0,l)", 1, n,
                                  "fail" if witness else "pass", _regime(ctx1), witness))
    return out


def check_laplace_identity(ctx, n_max):
    """kappa LB = D_{0,2} + eps_1 D_{0,1} on the rank-one fixed-point module, through J -> [I]."""
    fp = model(ctx)
    lb = laplace_beltrami(ctx)
    out = []
    for n in range(n_max + 1):
        witness = None
        for lam in partitions_of(n):
            key = MultiPartition([lam])
            loc = fp.h(0, 2).column(key).get(key, ctx.zero) + \
                ctx.eps[0] * fp.h(0, 1).column(key).get(key, ctx.zero)
            J = jack(ctx, lam).expansion
            if _apply(lb, J).scale(ctx.kappa) - J.scale(loc):
                witness = {"lambda": list(lam)}
                break
        out.append(RelationReport("kappa LB = D(0,2) + eps1 D(0,1)", 1, n,
                                  "fail" if witness else "pass", _regime(ctx), witness))
    return out


# ---------------------------------------------------------------------------
# monomial basis (oracle)
# ---------------------------------------------------------------------------

def p_to_m(mu):
    """Expansion of p_mu in the monomial basis: dict lam -> integer coefficient."""
    mu = Partition(mu)
    n = mu.size
    # distribute the parts of mu into at most n variables; keep sorted exponents
    states = Counter({(): 1})
    for part in mu:
        nxt = Counter()
        for expo, c in states.items():
            expo = list(expo) + [0] * (n - len(expo))
            for i in range(n):
                e = list(expo)
                e[i] += part
                nxt[tuple(e)] += c
        states = nxt
    out = Counter()
    for expo, c in states.items():
        lam = Partition(sorted((e for e in expo if e), reverse=True))
        out[lam] += c
    # each monomial x^expo with sorted exponent lam was counted once per expo,
    # and m_lam contains every distinct rearrangement once
    result = {}
    for lam, total in out.items():
        result[lam] = total // _rearrangements(lam, n)
    return result


def _rearrangements(lam, n):
    counts = Counter(lam)
    zeros = n - len(lam)
    denom = factorial(zeros)
    for m in counts.values():
        denom *= factorial(m)
    return factorial(n) // denom


def to_monomial(f):
    """Monomial-basis coordinates of a symmetric function given in the p basis."""
    out = {}
    for mu, c in f.items():
        for lam, k in p_to_m(mu).items():
            out[lam] = out[lam] + c * k if lam in out else c * k
    return {lam: c for lam, c in out.items() if c != 0}
