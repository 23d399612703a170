"""Finite quotients of Hecke groups modulo a principal congruence subgroup.

The Hecke group H_q (q in {3, 4, 6}) is generated by the translation
T: z -> z + lam_q (lam_q = 2cos(pi/q), so lam = 1, sqrt(2), sqrt(3)) and the
inversion S: z -> -1/z.  Reducing matrix entries modulo n and identifying
g with -g yields a finite group; this module enumerates it, computes its
order by the closed-form index formula, and classifies elements as even/odd.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .ring import (
    ProjMatrix,
    RingElem,
    RingParams,
    canonicalize,
    identity_matrix,
    mat_mul,
)

__all__ = [
    "HeckeParams",
    "EnumerationLimitError",
    "DEFAULT_GROUP_LIMIT",
    "generators",
    "principal_congruence_index",
    "enumerate_group",
    "FiniteHeckeGroup",
    "parity",
    "element_order",
    "PermGroup",
    "s5_permutation_group",
]

DEFAULT_GROUP_LIMIT = 10**6

_RADICAND = {3: 1, 4: 2, 6: 3}


class EnumerationLimitError(RuntimeError):
    """Raised when a group closure exceeds the configured element bound."""


@dataclass(frozen=True)
class HeckeParams:
    """Quotient parameters: q selects the Hecke group, n the modulus."""

    q: int
    n: int

    def __post_init__(self) -> None:
        if self.q not in (3, 4, 6):
            raise ValueError(f"q must be 3, 4 or 6, got {self.q}")
        if self.n < 3:
            raise ValueError(f"modulus must be >= 3, got {self.n}")

    @property
    def m(self) -> int:
        """Radicand of lam_q**2: 1, 2, 3 for q = 3, 4, 6."""
        return _RADICAND[self.q]

    @property
    def ring(self) -> RingParams:
        return RingParams(self.n, self.m)


def _lam(p: HeckeParams) -> RingElem:
    # lam_3 = 1 lives in the rational part; lam_4, lam_6 are pure sqrt(m).
    return RingElem(1, 0) if p.q == 3 else RingElem(0, 1)


def generators(p: HeckeParams) -> tuple[ProjMatrix, ProjMatrix, ProjMatrix]:
    """Canonical images of S = [[0,-1],[1,0]], T = [[1,lam],[0,1]], R = T*S."""
    rp = p.ring
    zero = RingElem(0, 0)
    one = RingElem(1, 0)
    minus_one = RingElem(rp.n - 1, 0)
    s = canonicalize(ProjMatrix(zero, minus_one, one, zero), rp)
    t = canonicalize(ProjMatrix(one, _lam(p), zero, one), rp)
    r = mat_mul(t, s, rp)
    return s, t, r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def principal_congruence_index(p: HeckeParams) -> int:
    """Order of the quotient H_q / H_q(n), for n > 2.

    For q in {4, 6} with m = 2, 3:
        n^3 * prod_{p|n} (1 - 1/p^2)                     if gcd(n, m) = 1
        n^3 * (1 - 1/m) * prod_{p|n, p != m} (1 - 1/p^2)  if m | n
    For q = 3 the classical modular-group formula applies, including the
    factor 1/2 from the projective identification g ~ -g.
    """
    n = p.n
    if n <= 2:
        raise ValueError(f"index formula requires n > 2, got {n}")
    primes = _prime_factors(n)
    num = n**3
    den = 1
    if p.q == 3:
        for q in primes:
            num *= q * q - 1
            den *= q * q
        den *= 2
    else:
        m = p.m
        if n % m == 0:
            num *= m - 1
            den *= m
            primes = [q for q in primes if q != m]
        for q in primes:
            num *= q * q - 1
            den *= q * q
    assert num % den == 0
    return num // den


def _group_limit(limit: int | None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get("HFMAP_MAX_GROUP")
    return int(env) if env else DEFAULT_GROUP_LIMIT


@dataclass
class FiniteHeckeGroup:
    """Enumerated quotient with 0-based element indices in BFS order.

    Elements are stored as packed canonical keys plus their (N, 8) component
    table; the identity has index 0.  Immutable after construction.
    """

    params: HeckeParams
    keys: np.ndarray
    comps: np.ndarray
    gen_S: int = 0
    gen_T: int = 0
    gen_R: int = 0
    _sorted_keys: np.ndarray = field(default=None, repr=False)
    _sorted_to_bfs: np.ndarray = field(default=None, repr=False)

    def __post_init__(self) -> None:
        order = np.argsort(self.keys)
        self._sorted_keys = self.keys[order]
        self._sorted_to_bfs = order.astype(np.int64)
        s, t, r = generators(self.params)
        self.gen_S = self.index_of_matrix(s)
        self.gen_T = self.index_of_matrix(t)
        self.gen_R = self.index_of_matrix(r)

    @property
    def order(self) -> int:
        return int(self.keys.shape[0])

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> int:
        return 0

    def matrix(self, i: int) -> ProjMatrix:
        c = self.comps[i]
        return ProjMatrix(
            RingElem(int(c[0]), int(c[1])),
            RingElem(int(c[2]), int(c[3])),
            RingElem(int(c[4]), int(c[5])),
            RingElem(int(c[6]), int(c[7])),
        )

    def index_of_key(self, key: int) -> int:
        pos = int(np.searchsorted(self._sorted_keys, key))
        if pos >= self._sorted_keys.shape[0] or self._sorted_keys[pos] != key:
            raise KeyError(f"key {key} is not an element of this group")
        return int(self._sorted_to_bfs[pos])

    def index_of_matrix(self, g: ProjMatrix) -> int:
        c = canonicalize(g, self.params.ring).components()
        key = int(kernels.pack_components(np.asarray(c, dtype=np.int64), self.params.n))
        return self.index_of_key(key)

    def mult(self, i: int, j: int) -> int:
        n, m = self.params.n, self.params.m
        key = kernels.right_mult_keys(self.comps[i], self.comps[j], n, m)
        return self.index_of_key(int(key))

    def inv(self, i: int) -> int:
        c = self.comps[i]
        n = self.params.n
        adj = np.array(
            [c[6], c[7], -c[2] % n, -c[3] % n, -c[4] % n, -c[5] % n, c[0], c[1]],
            dtype=np.int64,
        )
        return self.index_of_key(int(kernels.canonical_keys(adj, n)))

    def right_mult_perm(self, j: int) -> np.ndarray:
        """Permutation i -> i*j over all element indices, as an int64 array."""
        n, m = self.params.n, self.params.m
        keys = kernels.right_mult_keys(self.comps, self.comps[j], n, m)
        pos = np.minimum(np.searchsorted(self._sorted_keys, keys), self.order - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise RuntimeError("group is not closed under multiplication")
        return self._sorted_to_bfs[pos]

    def parities(self) -> np.ndarray:
        """Bool array, True where the element is odd (q = 4 or 6 only)."""
        if self.params.q == 3:
            raise ValueError("parity is undefined for q=3 (all elements even)")
        c = self.comps
        even = (c[:, 1] == 0) & (c[:, 7] == 0) & (c[:, 2] == 0) & (c[:, 4] == 0)
        odd = (c[:, 0] == 0) & (c[:, 6] == 0) & (c[:, 3] == 0) & (c[:, 5] == 0)
        if not np.all(even ^ odd):
            raise ValueError("group contains an element with no parity pattern")
        return odd


def enumerate_group(
    p: HeckeParams,
    limit: int | None = None,
    backend: str | None = None,
) -> FiniteHeckeGroup:
    """Breadth-first closure of {S, T} in projective matrices mod n."""
    s, t, _ = generators(p)
    gens = np.asarray([s.components(), t.components()], dtype=np.int64)
    bound = _group_limit(limit)
    keys, done = kernels.closure_bfs(gens, p.n, p.m, bound, backend=backend)
    if not done:
        raise EnumerationLimitError(
            f"group closure for q={p.q}, n={p.n} exceeded {bound} elements; "
            "raise the limit or HFMAP_MAX_GROUP"
        )
    comps = kernels.unpack_keys(keys, p.n)
    return FiniteHeckeGroup(params=p, keys=keys, comps=comps)


@lru_cache(maxsize=32)
def cached_group(q: int, n: int) -> FiniteHeckeGroup:
    """Memoized enumerate_group for the default limit; groups are immutable."""
    return enumerate_group(HeckeParams(q, n))


def parity(g: ProjMatrix, p: HeckeParams) -> str:
    """'even' for [[a, b*sqrt(m)], [c*sqrt(m), d]] patterns, 'odd' transposed.

    Defined only for q in {4, 6}; for q = 3 every element is an integer
    matrix and the even/odd split does not exist.
    """
    if p.q == 3:
        raise ValueError("parity is undefined for q=3 (all elements even)")
    even = (g.e11.irr == 0 and g.e22.irr == 0 and g.e12.rat == 0 and g.e21.rat == 0)
    odd = (g.e11.rat == 0 and g.e22.rat == 0 and g.e12.irr == 0 and g.e21.irr == 0)
    if even and not odd:
        return "even"
    if odd and not even:
        return "odd"
    raise ValueError(f"matrix {g} matches no parity pattern; corrupted element")


def element_order(g: ProjMatrix, p: HeckeParams) -> int:
    """Least k >= 1 with g**k projectively the identity."""
    rp = p.ring
    ident = canonicalize(identity_matrix(rp), rp)
    acc = canonicalize(g, rp)
    k = 1
    while acc != ident:
        acc = mat_mul(acc, g, rp)
        k += 1
        if k > 4 * rp.n**3:
            raise RuntimeError("element order exceeds group-theoretic bound")
    return k


# ---------------------------------------------------------------------------
# Degree-5 permutation model.
# ---------------------------------------------------------------------------

Perm = tuple[int, ...]


def perm_compose(f: Perm, g: Perm) -> Perm:
    """Standard composition (f*g)(i) = f(g(i)): the right factor acts first."""
    return tuple(f[g[i]] for i in range(len(g)))


def perm_inverse(f: Perm) -> Perm:
    out = [0] * len(f)
    for i, v in enumerate(f):
        out[v] = i
    return tuple(out)


def perm_order(f: Perm) -> int:
    ident = tuple(range(len(f)))
    acc = f
    k = 1
    while acc != ident:
        acc = perm_compose(acc, f)
        k += 1
    return k


@dataclass
class PermGroup:
    """Finite permutation group enumerated from generators, identity first."""

    degree: int
    gens: dict[str, Perm]
    elements: list[Perm]
    index: dict[Perm, int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        return self.index[perm_compose(self.elements[i], self.elements[j])]

    def right_mult_perm(self, g: Perm) -> np.ndarray:
        return np.asarray(
            [self.index[perm_compose(e, g)] for e in self.elements], dtype=np.int64
        )


def _enumerate_perm_group(degree: int, gens: dict[str, Perm]) -> PermGroup:
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    gen_list = list(gens.values())
    while frontier:
        nxt = []
        for e in frontier:
            for g in gen_list:
                h = perm_compose(e, g)
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    nxt.append(h)
        frontier = nxt
    return PermGroup(degree=degree, gens=dict(gens), elements=elements, index=index)


def s5_permutation_group() -> PermGroup:
    """The order-120 group on 5 points generated by x = (1 5), y = (5 4 3 2 1).

    With the composition convention above, x*y*z is the identity for
    z = (2 3 4 5), matching the (2, 5, 4) triangle-group relations; the
    generator orders are 2, 5, 4.
    """
    x = (4, 1, 2, 3, 0)
    y = (4, 0, 1, 2, 3)
    z = (0, 2, 3, 4, 1)
    return _enumerate_perm_group(5, {"x": x, "y": y, "z": z})
