"""Exact cross-checks between instanton localization and free-field W-algebras.

The fixed-point side (Euler classes, Nekrasov series, Gaiotto state and the
operators f_{1,l}, f_{-1,l}, f_{0,l}) lives in :mod:`agtcheck.localization`;
the algebra generated by D_{l,d} and its relation suite in
:mod:`agtcheck.shc`; Jack polynomials in :mod:`agtcheck.jack`; the shuffle
algebra in :mod:`agtcheck.shuffle`; free bosons, the Miura transform and the
Whittaker comparison in :mod:`agtcheck.fock`.
"""

from .partitions import MultiPartition, Partition
from .scalars import DegeneratePointError, ParameterContext, make_params

__all__ = ["DegeneratePointError", "MultiPartition", "ParameterContext", "Partition", "make_params"]
