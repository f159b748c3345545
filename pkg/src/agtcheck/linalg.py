"""Exact linear algebra: Gaussian elimination and lazy sparse operators.

Vectors are dictionaries ``basis key -> scalar`` with zero entries pruned.
A :class:`LinearOperator` is described by a function returning the image of
one basis key; images are cached, and sums, products and commutators of
operators are built lazily from those of their factors.
"""

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# sparse vectors
# ---------------------------------------------------------------------------

def vec_add(u, v, coeff=1):
    """Return ``u + coeff * v`` as a new dictionary."""
    out = dict(u)
    for k, c in v.items():
        val = out.get(k)
        term = c if coeff == 1 else coeff * c
        val = term if val is None else val + term
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def vec_axpy(acc, coeff, v):
    """In place ``acc += coeff * v``."""
    for k, c in v.items():
        term = c if coeff == 1 else coeff * c
        val = acc.get(k)
        val = term if val is None else val + term
        if val:
            acc[k] = val
        else:
            acc.pop(k, None)
    return acc


def vec_scale(v, coeff):
    if not coeff:
        return {}
    out = {}
    for k, c in v.items():
        val = coeff * c
        if val:
            out[k] = val
    return out


# ---------------------------------------------------------------------------
# lazy operators
# ---------------------------------------------------------------------------

class LinearOperator:
    """A linear map defined on basis keys, with cached columns.

    ``column_fn(key)`` returns the image of the basis vector ``key`` as a
    sparse dictionary.  ``shift`` records the grade shift when known and
    ``reach`` the largest grade increase met while evaluating a column
    (intermediate steps included), which bounds the grades a check touches.
    """

    def __init__(self, column_fn, shift=None, name="", reach=None):
        self._fn = column_fn
        self._cache = {}
        self.shift = shift
        self.name = name
        if reach is None:
            reach = max(shift, 0) if shift is not None else 0
        self.reach = reach

    def column(self, key):
        col = self._cache.get(key)
        if col is None:
            col = self._fn(key)
            self._cache[key] = col
        return col

    def apply(self, vec):
        out = {}
        for k, c in vec.items():
            vec_axpy(out, c, self.column(k))
        return out

    __call__ = apply

    def __add__(self, other):
        return LinearOperator(lambda k: vec_add(self.column(k), other.column(k)),
                              _shift(self, other), f"({self.name}+{other.name})",
                              max(self.reach, other.reach))

    def __sub__(self, other):
        return LinearOperator(lambda k: vec_add(self.column(k), other.column(k), -1),
                              _shift(self, other), f"({self.name}-{other.name})",
                              max(self.reach, other.reach))

    def __neg__(self):
        return LinearOperator(lambda k: vec_scale(self.column(k), -1), self.shift,
                              f"-{self.name}", self.reach)

    def scaled(self, c):
        return LinearOperator(lambda k: vec_scale(self.column(k), c), self.shift,
                              f"{c}*{self.name}", self.reach)

    def __matmul__(self, other):
        shift = None if self.shift is None or other.shift is None else self.shift + other.shift
        reach = max(other.reach, (other.shift or 0) + self.reach)
        return LinearOperator(lambda k: self.apply(other.column(k)), shift,
                              f"{self.name}{other.name}", reach)

    def matrix(self, source_keys, target_keys):
        """Dense list-of-rows matrix restricted to the given bases."""
        index = {k: i for i, k in enumerate(target_keys)}
        rows = [[0] * len(source_keys) for _ in target_keys]
        for j, k in enumerate(source_keys):
            for t, c in self.column(k).items():
                if t not in index:
                    raise KeyError(f"image of {k} leaves the target basis at {t}")
                rows[index[t]][j] = c
        return rows


def _shift(a, b):
    if a.shift is None:
        return b.shift
    return a.shift


def commutator(a, b):
    """The lazy operator ``a b - b a``."""
    op = (a @ b) - (b @ a)
    op.name = f"[{a.name},{b.name}]"
    return op


def scalar_operator(c, name=""):
    """Multiplication by a scalar."""
    return LinearOperator(lambda k: {k: c} if c else {}, 0, name or str(c))


def diagonal_operator(eigen_fn, name=""):
    """Diagonal operator with eigenvalue ``eigen_fn(key)`` on ``key``."""
    def col(k):
        val = eigen_fn(k)
        return {k: val} if val else {}
    return LinearOperator(col, 0, name)


def first_difference(a, b, keys):
    """First basis key whose images under ``a`` and ``b`` differ, with details.

    Returns ``None`` when the operators agree on ``keys``; otherwise a tuple
    ``(key, target, value_a, value_b)``.
    """
    for k in keys:
        ca, cb = a.column(k), b.column(k)
        if ca == cb:
            continue
        for t in set(ca) | set(cb):
            va, vb = ca.get(t, 0), cb.get(t, 0)
            if va != vb:
                return (k, t, va, vb)
    return None


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------

@dataclass
class SolveResult:
    """Outcome of :func:`solve_linear`.

    ``status`` is ``"unique"``, ``"family"`` (rank deficit) or
    ``"inconsistent"``.  ``solution`` is a particular solution (free
    variables set to zero) when one exists, given as a list of columns when
    several right-hand sides were supplied.  ``witness`` is the index of an
    original equation that certifies inconsistency.
    """

    status: str
    rank: int
    nullity: int
    solution: list = None
    witness: int = None
    pivots: list = field(default_factory=list)


def solve_linear(matrix, rhs, zero=0):
    """Solve ``matrix @ v = rhs`` exactly.

    ``matrix`` is a list of rows; ``rhs`` is either a list (one right-hand
    side) or a list of rows (several right-hand sides, one column each).
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    multi = bool(rhs) and isinstance(rhs[0], (list, tuple))
    b = [list(row) if multi else [row] for row in rhs]
    nrhs = len(b[0]) if b else (0 if multi else 1)
    a = [list(row) + brow for row, brow in zip(matrix, b)]
    origin = list(range(nrows))
    pivots = []
    prow = 0
    for col in range(ncols):
        pick = None
        for i in range(prow, nrows):
            if a[i][col]:
                pick = i
                break
        if pick is None:
            continue
        a[prow], a[pick] = a[pick], a[prow]
        origin[prow], origin[pick] = origin[pick], origin[prow]
        inv = 1 / a[prow][col]
        a[prow] = [v * inv if v else v for v in a[prow]]
        for i in range(nrows):
            if i != prow and a[i][col]:
                f = a[i][col]
                pr = a[prow]
                a[i] = [vi - f * vp if vp else vi for vi, vp in zip(a[i], pr)]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    rank = len(pivots)
    for i in range(rank, nrows):
        if any(a[i][ncols + j] for j in range(nrhs)):
            return SolveResult("inconsistent", rank, ncols - rank, witness=origin[i], pivots=pivots)
    sols = []
    for j in range(nrhs):
        v = [zero] * ncols
        for i, col in enumerate(pivots):
            v[col] = a[i][ncols + j]
        sols.append(v)
    solution = sols if multi else sols[0]
    status = "unique" if rank == ncols else "family"
    return SolveResult(status, rank, ncols - rank, solution, pivots=pivots)
