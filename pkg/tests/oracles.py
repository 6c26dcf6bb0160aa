"""Independent re-derivations shared by several test modules."""

import itertools
from collections import Counter

from spernerlab.complex import closure
from spernerlab.geometry import neg


def pseudo_boundary(simplices, dim):
    """Closure of the (dim-1)-faces lying in exactly one dim-simplex."""
    tops = [s for s in simplices if len(s) == dim + 1]
    count = Counter(f for s in tops for f in itertools.combinations(s, dim))
    return closure(f for f, c in count.items() if c == 1) if dim > 0 else frozenset()


def negate(T, simplices):
    idx = T.index
    return frozenset(tuple(sorted(idx[neg(T.coords[v])] for v in s)) for s in simplices)


def chain_equalities_hold(chain):
    """T^(i-1) u -T^(i-1) = bd T^i and T^(i-1) n -T^(i-1) = bd T^(i-1) at every level."""
    T = chain.triangulation
    for i in range(1, chain.n + 1):
        lower, upper = chain.level(i - 1), chain.level(i)
        if lower | negate(T, lower) != pseudo_boundary(upper, i):
            return False
        if lower & negate(T, lower) != pseudo_boundary(lower, i - 1):
            return False
    return True
