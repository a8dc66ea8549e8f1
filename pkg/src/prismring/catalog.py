"""Built-in fusion ring catalog.

Small standard rings are constructed programmatically; the two large
integral rings are shipped as ring documents under ``data/rings``.
"""

from __future__ import annotations

import functools
import importlib.resources as resources
from itertools import product

from .rings import FusionRing, build_ring, parse_ring


def _group_ring(name, elements, mul, inverse=None):
    r = len(elements)
    idx = {g: i for i, g in enumerate(elements)}
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for g, h in product(elements, elements):
        N[idx[g]][idx[h]][idx[mul(g, h)]] = 1
    return build_ring(name, elements, N)


def _trivial():
    return build_ring("trivial", ["1"], [[[1]]])


def _z2():
    return _group_ring("Z2", ["1", "g"], lambda a, b: "1" if a == b else "g")


def _fib():
    # tau * tau = 1 + tau
    N = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 1]],
    ]
    return build_ring("Fib", ["1", "tau"], N)


def _ising():
    # eps^2 = 1, eps.sigma = sigma, sigma^2 = 1 + eps
    N = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[0, 0, 1], [0, 0, 1], [1, 1, 0]],
    ]
    return build_ring("Ising", ["1", "eps", "sigma"], N)


def _rep_s3():
    # s^2 = 1, s.t = t.s = t, t^2 = 1 + s + t
    N = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[0, 0, 1], [0, 0, 1], [1, 1, 1]],
    ]
    return build_ring("RepS3", ["1", "s", "t"], N)


def _vec_s3():
    # S3 as permutations of {0,1,2} in cycle-free word encoding
    elements = ["e", "r", "rr", "s", "sr", "srr"]
    perms = {
        "e": (0, 1, 2),
        "r": (1, 2, 0),
        "rr": (2, 0, 1),
        "s": (0, 2, 1),
        "sr": (2, 1, 0),
        "srr": (1, 0, 2),
    }
    names = {v: k for k, v in perms.items()}

    def mul(a, b):
        pa, pb = perms[a], perms[b]
        return names[tuple(pa[pb[i]] for i in range(3))]

    return _group_ring("VecS3", elements, mul)


def _from_data(filename):
    text = resources.files("prismring").joinpath(f"data/rings/{filename}").read_text()
    return parse_ring(text)


_BUILDERS = {
    "trivial": _trivial,
    "Z2": _z2,
    "Fib": _fib,
    "Ising": _ising,
    "RepS3": _rep_s3,
    "VecS3": _vec_s3,
    "F210": lambda: _from_data("F210.json"),
    "F660": lambda: _from_data("F660.json"),
}

CATALOG_NAMES = tuple(_BUILDERS)


@functools.lru_cache(maxsize=None)
def catalog(name: str) -> FusionRing:
    """Return a built-in ring by name; KeyError lists valid names."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown catalog ring {name!r}; choose from {', '.join(CATALOG_NAMES)}"
        ) from None
    return builder()
