"""Exact refined BPS invariants, quantum torus factorizations, shuffle algebra
dimensions and quiver-with-potential mutations."""

import json as _json

from . import _core
from ._core import Error, InvalidInput, Refusal, preset_names

__all__ = [
    "Error",
    "InvalidInput",
    "Refusal",
    "preset_names",
    "load",
    "bps",
    "zseries",
    "dependence_check",
    "point_count",
    "spherical_dimensions",
    "compare_spherical",
    "mutate",
    "mutability_search",
    "classify_cubic",
    "classify_tensor",
    "selftest",
]


def _source(src):
    # preset name, quiver document (dict) or its JSON text
    if isinstance(src, dict):
        return _json.dumps(src)
    return src


def _box(box):
    if box is None:
        return ""
    if isinstance(box, str):
        return box
    return ",".join(str(int(x)) for x in box)


def load(src):
    """The quiver document of a preset or input, as a dict."""
    return _json.loads(_core.preset_json(_source(src)))


def bps(src="markov-gen", box=None, order=40, primes=()):
    return _json.loads(_core.bps(_source(src), _box(box), order, list(primes)))


def zseries(src="markov-gen", box=None, order=40, primes=()):
    return _json.loads(_core.zseries(_source(src), _box(box), order, list(primes)))


def dependence_check(first="markov-gen", second="markov-marg", box=None):
    return _json.loads(_core.dependence_check(_source(first), _source(second), _box(box)))


def point_count(src="markov-gen", dim=None, primes=()):
    return _json.loads(_core.point_count(_source(src), _box(dim), list(primes)))


def spherical_dimensions(dim=(1, 1, 1), n_max=7):
    """Graded dimensions of the spherical part on the Markov quiver, keyed by degree."""
    out = _json.loads(_core.spherical_dimensions(_box(dim), n_max))
    return {int(k): int(v) for k, v in out["dims"].items()}, out["partial"]


def compare_spherical(src="markov-gen", dim=None, n_max=7):
    return _json.loads(_core.compare_spherical(_source(src), _box(dim), n_max))


def mutate(src, word, trunc=9):
    return _json.loads(_core.mutate(_source(src), [str(v) for v in word], trunc))


def mutability_search(src, depth=4, trunc=9):
    return _json.loads(_core.mutability_search(_source(src), depth, trunc))


def classify_cubic(src):
    return _core.classify_cubic(_source(src))


def classify_tensor(entries):
    """Entries t[i][j][k] flattened with k fastest; ints, Fractions or strings."""
    return _core.classify_tensor([str(x) for x in entries])


def selftest(only=()):
    return _json.loads(_core.selftest(list(only)))
