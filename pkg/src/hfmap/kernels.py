"""Hot kernels: packed matrix keys and the breadth-first group closure.

A projective matrix is 8 residues in [0, n) (scan order e11.rat, e11.irr,
e12.rat, e12.irr, e21.rat, e21.irr, e22.rat, e22.irr).  Packing them as
base-n digits, most significant first, gives an int64 key whose numeric
order equals lexicographic order on the component tuple, so the canonical
projective representative is simply min(key(g), key(-g)).

Two interchangeable closure backends are provided:

* ``numba``  - scalar FIFO BFS over an open-addressing hash set, @njit;
* ``numpy``  - level-synchronous vectorized BFS.

Both return the exact same element order (the scalar FIFO discovery order).
Selection: HFMAP_BACKEND=numba|numpy|auto (default auto = numba if importable).
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "MAX_MODULUS",
    "pack_components",
    "unpack_keys",
    "canonical_keys",
    "mat_mul_components",
    "right_mult_keys",
    "closure_bfs",
    "available_backends",
    "resolve_backend",
]

# n**8 must fit in int64: 180**8 < 2**63 < 181**8.
MAX_MODULUS = 180

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def _check_modulus(n: int) -> None:
    if not 3 <= n <= MAX_MODULUS:
        raise ValueError(f"modulus {n} outside supported range [3, {MAX_MODULUS}]")


def pack_components(comps: np.ndarray, n: int) -> np.ndarray:
    """Pack (..., 8) component arrays into base-n int64 keys."""
    comps = np.asarray(comps, dtype=np.int64)
    keys = comps[..., 0].astype(np.int64).copy()
    for i in range(1, 8):
        keys = keys * n + comps[..., i]
    return keys


def unpack_keys(keys: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_components; returns (..., 8) int64 components."""
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty(keys.shape + (8,), dtype=np.int64)
    rem = keys.copy()
    for i in range(7, -1, -1):
        out[..., i] = rem % n
        rem //= n
    return out


def canonical_keys(comps: np.ndarray, n: int) -> np.ndarray:
    """Canonical projective key: min over the global sign flip."""
    comps = np.asarray(comps, dtype=np.int64)
    neg = (-comps) % n
    return np.minimum(pack_components(comps, n), pack_components(neg, n))


def mat_mul_components(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    """Componentwise 2x2 product over Z_n[sqrt(m)]; broadcasts like numpy."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a0, a1, a2, a3, a4, a5, a6, a7 = (a[..., i] for i in range(8))
    b0, b1, b2, b3, b4, b5, b6, b7 = (b[..., i] for i in range(8))
    out = np.empty(np.broadcast(a[..., 0], b[..., 0]).shape + (8,), dtype=np.int64)
    out[..., 0] = (a0 * b0 + m * a1 * b1 + a2 * b4 + m * a3 * b5) % n
    out[..., 1] = (a0 * b1 + a1 * b0 + a2 * b5 + a3 * b4) % n
    out[..., 2] = (a0 * b2 + m * a1 * b3 + a2 * b6 + m * a3 * b7) % n
    out[..., 3] = (a0 * b3 + a1 * b2 + a2 * b7 + a3 * b6) % n
    out[..., 4] = (a4 * b0 + m * a5 * b1 + a6 * b4 + m * a7 * b5) % n
    out[..., 5] = (a4 * b1 + a5 * b0 + a6 * b5 + a7 * b4) % n
    out[..., 6] = (a4 * b2 + m * a5 * b3 + a6 * b6 + m * a7 * b7) % n
    out[..., 7] = (a4 * b3 + a5 * b2 + a6 * b7 + a7 * b6) % n
    return out


def right_mult_keys(comps: np.ndarray, g: np.ndarray, n: int, m: int) -> np.ndarray:
    """Canonical keys of (each row of comps) * g."""
    return canonical_keys(mat_mul_components(comps, g, n, m), n)


# ---------------------------------------------------------------------------
# numpy backend: level-synchronous BFS replicating scalar FIFO order.
# ---------------------------------------------------------------------------


def _closure_numpy(gens: np.ndarray, n: int, m: int, limit: int) -> tuple[np.ndarray, bool]:
    ident = np.zeros(8, dtype=np.int64)
    ident[0] = 1
    ident[6] = 1
    id_key = canonical_keys(ident, n)
    order = [np.asarray([id_key], dtype=np.int64).reshape(1)]
    visited = np.asarray([id_key], dtype=np.int64).reshape(1)
    count = 1
    frontier = ident.reshape(1, 8)
    k = gens.shape[0]
    while frontier.shape[0] > 0:
        # Row order f0*g0, f0*g1, f1*g0, ... matches the scalar FIFO loop.
        prods = np.stack(
            [mat_mul_components(frontier, gens[i], n, m) for i in range(k)], axis=1
        ).reshape(-1, 8)
        keys = canonical_keys(prods, n)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        keys = keys[first]
        pos = np.searchsorted(visited, keys)
        pos = np.minimum(pos, visited.shape[0] - 1)
        fresh = keys[visited[pos] != keys]
        if fresh.shape[0] == 0:
            break
        count += fresh.shape[0]
        order.append(fresh)
        if count > limit:
            return np.concatenate(order), False
        visited = np.sort(np.concatenate([visited, fresh]))
        frontier = unpack_keys(fresh, n)
    return np.concatenate(order), True


# ---------------------------------------------------------------------------
# numba backend: scalar FIFO BFS over an open-addressing table.
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _bfs_numba(gens, n, m, limit):  # pragma: no cover - compiled
        gold = np.uint64(0x9E3779B97F4A7C15)
        cap = 1 << 12
        shift = np.uint64(64 - 12)
        table = np.full(cap, -1, dtype=np.int64)
        order = np.empty(limit + 2, dtype=np.int64)

        comps = np.zeros(8, dtype=np.int64)
        comps[0] = 1
        comps[6] = 1
        key = np.int64(0)
        negkey = np.int64(0)
        for i in range(8):
            key = key * n + comps[i]
            negkey = negkey * n + (-comps[i]) % n
        if negkey < key:
            key = negkey
        slot = np.int64((np.uint64(key) * gold) >> shift)
        table[slot] = key
        order[0] = key
        count = 1

        ng = gens.shape[0]
        a = np.empty(8, dtype=np.int64)
        prod = np.empty(8, dtype=np.int64)
        head = 0
        while head < count:
            cur = order[head]
            head += 1
            rem = cur
            for i in range(7, -1, -1):
                a[i] = rem % n
                rem //= n
            for gi in range(ng):
                b = gens[gi]
                prod[0] = (a[0] * b[0] + m * a[1] * b[1] + a[2] * b[4] + m * a[3] * b[5]) % n
                prod[1] = (a[0] * b[1] + a[1] * b[0] + a[2] * b[5] + a[3] * b[4]) % n
                prod[2] = (a[0] * b[2] + m * a[1] * b[3] + a[2] * b[6] + m * a[3] * b[7]) % n
                prod[3] = (a[0] * b[3] + a[1] * b[2] + a[2] * b[7] + a[3] * b[6]) % n
                prod[4] = (a[4] * b[0] + m * a[5] * b[1] + a[6] * b[4] + m * a[7] * b[5]) % n
                prod[5] = (a[4] * b[1] + a[5] * b[0] + a[6] * b[5] + a[7] * b[4]) % n
                prod[6] = (a[4] * b[2] + m * a[5] * b[3] + a[6] * b[6] + m * a[7] * b[7]) % n
                prod[7] = (a[4] * b[3] + a[5] * b[2] + a[6] * b[7] + a[7] * b[6]) % n
                key = np.int64(0)
                negkey = np.int64(0)
                for i in range(8):
                    key = key * n + prod[i]
                    negkey = negkey * n + (-prod[i]) % n
                if negkey < key:
                    key = negkey
                slot = np.int64((np.uint64(key) * gold) >> shift)
                while True:
                    seen = table[slot]
                    if seen == key:
                        break
                    if seen == -1:
                        table[slot] = key
                        order[count] = key
                        count += 1
                        if count > limit:
                            return order[:count], False
                        if 2 * count > cap:
                            cap = cap * 2
                            shift = np.uint64(np.uint64(shift) - np.uint64(1))
                            table = np.full(cap, -1, dtype=np.int64)
                            for j in range(count):
                                kj = order[j]
                                sj = np.int64((np.uint64(kj) * gold) >> shift)
                                while table[sj] != -1:
                                    sj = (sj + 1) & (cap - 1)
                                table[sj] = kj
                        break
                    slot = (slot + 1) & (cap - 1)
        return order[:count], True


def _closure_numba(gens: np.ndarray, n: int, m: int, limit: int) -> tuple[np.ndarray, bool]:
    if not _HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    keys, ok = _bfs_numba(gens, n, m, limit)
    return np.asarray(keys, dtype=np.int64), bool(ok)


# ---------------------------------------------------------------------------
# Backend selection.
# ---------------------------------------------------------------------------

_BACKENDS = {
    "numpy": _closure_numpy,
    "numba": _closure_numba,
}


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def resolve_backend(backend: str | None = None) -> str:
    """Pick the closure backend from the argument or HFMAP_BACKEND."""
    choice = backend or os.environ.get("HFMAP_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if _HAVE_NUMBA else "numpy"
    if choice not in _BACKENDS:
        raise ValueError(f"unknown backend {choice!r}; expected numba, numpy or auto")
    if choice == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("HFMAP_BACKEND=numba but numba is not installed")
    return choice


def closure_bfs(
    gens: np.ndarray,
    n: int,
    m: int,
    limit: int,
    backend: str | None = None,
) -> tuple[np.ndarray, bool]:
    """Breadth-first closure of canonical generator keys under right products.

    Returns (keys in discovery order, completed).  ``completed`` is False when
    the closure exceeded ``limit`` elements and was abandoned.
    """
    _check_modulus(n)
    gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).reshape(-1, 8))
    return _BACKENDS[resolve_backend(backend)](gens, n, m, limit)
