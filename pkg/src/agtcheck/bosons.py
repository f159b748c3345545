"""Free bosons b^{(1)}, ..., b^{(r)} acting on a Fock space.

The Fock space is spanned by the monomials ``prod_i prod_j b^{(i)}_{-l_ij}``
applied to the highest-weight vector.  A monomial is stored as an
r-partition whose ``i``-th component lists the creation modes of colour
``i``, so the basis of grade ``n`` is the set of r-partitions of ``n``.

The commutators are ``[b^{(i)}_l, b^{(j)}_{-h}] = l delta_ij delta_lh * norm``
with ``norm = 1/kappa`` by default, and ``b^{(i)}_0`` acts on the whole
space by the scalar ``zero_modes[i]``.
"""

from .linalg import LinearOperator, vec_axpy
from .partitions import MultiPartition, Partition, enumerate_multipartitions


def _insert(part, l):
    return Partition(sorted(tuple(part) + (l,), reverse=True))


def _remove(part, l):
    parts = list(part)
    parts.remove(l)
    return Partition(parts)


class BosonSpace:
    """Fock space of ``r`` free bosons with given zero modes."""

    def __init__(self, ctx, r=None, zero_modes=None, norm=None):
        self.ctx = ctx
        self.r = ctx.r if r is None else r
        if zero_modes is None:
            zero_modes = [ctx.zero] * self.r
        if len(zero_modes) != self.r:
            raise ValueError("one zero mode per colour is needed")
        self.zero_modes = tuple(zero_modes)
        self.norm = ctx.one / ctx.kappa if norm is None else norm
        self._modes = {}

    def basis(self, n):
        return enumerate_multipartitions(self.r, n)

    def vacuum(self):
        return {MultiPartition([()] * self.r): self.ctx.one}

    def monomial(self, modes):
        """The basis key of the state prod b^{(i)}_{-l}|vac> for ``modes = [(i, l), ...]``."""
        parts = [[] for _ in range(self.r)]
        for i, l in modes:
            if l <= 0:
                raise ValueError("creation modes must be positive")
            parts[i - 1].append(l)
        return MultiPartition(sorted(p, reverse=True) for p in parts)

    def mode(self, i, l):
        """The operator b^{(i)}_l (colour ``i`` one-based)."""
        key = (i, l)
        op = self._modes.get(key)
        if op is not None:
            return op
        if not 1 <= i <= self.r:
            raise ValueError(f"colour {i} is outside 1..{self.r}")
        if l < 0:
            def col(mp):
                parts = list(mp)
                parts[i - 1] = _insert(parts[i - 1], -l)
                return {MultiPartition(parts): self.ctx.one}
        elif l == 0:
            z = self.zero_modes[i - 1]

            def col(mp):
                return {mp: z} if z else {}
        else:
            def col(mp):
                mult = mp[i - 1].count(l)
                if not mult:
                    return {}
                parts = list(mp)
                parts[i - 1] = _remove(parts[i - 1], l)
                return {MultiPartition(parts): mult * l * self.norm}
        op = LinearOperator(col, -l, f"b{i}({l})")
        self._modes[key] = op
        return op

    def apply_word(self, word, vec):
        """Apply ``prod`` of modes in ``word = [(i, l), ...]`` (rightmost acts first)."""
        for i, l in reversed(word):
            if not vec:
                return {}
            vec = self.mode(i, l).apply(vec)
        return vec

    def normal_word(self, word):
        """Normal ordering of a word of modes: creators left, annihilators right."""
        return sorted(word, key=lambda f: 0 if f[1] < 0 else (1 if f[1] == 0 else 2))

    def word_operator(self, terms, shift, name=""):
        """Operator sum of ``coeff * word`` over ``terms = [(coeff, word), ...]``.

        Words are applied as written; ``shift`` is the grade shift of every term.
        """
        def col(mp):
            out = {}
            start = {mp: self.ctx.one}
            for coeff, word in terms:
                if not coeff:
                    continue
                img = self.apply_word(word, start)
                if img:
                    vec_axpy(out, coeff, img)
            return out
        return LinearOperator(col, shift, name)
