"""Regular SU(2) representation curves of knots given as plats, and their volume forms.

Every function returns plain Python data decoded from the JSON documents the
``platvol`` command line tool prints.
"""

import json
import warnings as _warnings

from . import _platvol
from ._platvol import schema_version, tool_version

__all__ = [
    "PlatvolError",
    "alexander",
    "arcs",
    "canonical_plat",
    "integrate",
    "invariance",
    "schema_version",
    "tool_version",
    "torus_catalog",
    "verify_all",
    "volume",
]


class PlatvolError(Exception):
    """Raised for library errors; ``kind`` names the error, e.g. ``NotAKnot``."""

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


def _call(fn, *args, **kwargs):
    try:
        out = fn(*args, **kwargs)
    except _platvol.PlatvolError as e:
        kind, _, message = str(e).partition(": ")
        raise PlatvolError(kind, message) from None
    if isinstance(out, tuple):
        text, warns = out
        for w in warns:
            _warnings.warn(w, RuntimeWarning, stacklevel=3)
        return json.loads(text)
    return json.loads(out)


def _path(p):
    return None if p is None else str(p)


def arcs(plat, *, seed=1, cache_dir=None, ambient_flip=False):
    """Traced arcs of Reg(K) with omega(d/dtheta_m) at every sample."""
    return _call(_platvol.arcs, plat, False, seed, _path(cache_dir), 0.0, ambient_flip)


def integrate(plat, *, seed=1, cache_dir=None, tol=0.0, ambient_flip=False):
    """Like :func:`arcs`, plus the integral of omega over each arc."""
    return _call(_platvol.arcs, plat, True, seed, _path(cache_dir), tol, ambient_flip)


def volume(plat, theta, *, seed=1, ambient_flip=False):
    """All intersection points at meridian angle ``theta`` with regularity data and omega."""
    return _call(_platvol.volume, plat, theta, seed, ambient_flip)


def invariance(plat, moves=(), *, seed=1, tol=0.0):
    """Compare omega before and after plat moves; empty ``moves`` runs all of them."""
    return _call(_platvol.invariance, plat, list(moves), seed, tol)


def verify_all(plat, *, seed=1, cache_dir=None):
    return _call(_platvol.verify_all, plat, seed, _path(cache_dir))


def alexander(plat):
    return _call(_platvol.alexander, plat)


def torus_catalog(q, samples=19):
    """Closed-form data for the arcs of the (2, q) torus knot."""
    return _call(_platvol.torus_catalog, q, samples)


def canonical_plat(plat):
    try:
        return _platvol.canonical_plat(plat)
    except _platvol.PlatvolError as e:
        kind, _, message = str(e).partition(": ")
        raise PlatvolError(kind, message) from None
