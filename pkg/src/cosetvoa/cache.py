"""On-disk persistence of the engine's normal-form memo tables.

One pickle file per engine signature (algebra, level, structure-constant
convention).  Ring coefficients are stored in a tagged plain form so the
file does not depend on flint's pickling support.  A file that cannot be
read, or whose header does not match, is deleted and rebuilt; the cache
never changes a result, only how much recursion is needed to get it.
"""
from __future__ import annotations

import hashlib
import logging
import os
import pickle
from fractions import Fraction
from pathlib import Path

from flint import fmpz_poly

from .affine import AffineVA

log = logging.getLogger(__name__)

CACHE_SCHEMA = 1
ENV_VAR = "COSETVOA_CACHE"
TABLES = ("_cm_cache", "_mm_cache", "_t_cache")


def cache_dir(path: str | os.PathLike | None = None) -> Path:
    if path:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cosetvoa"


def _file_for(engine: AffineVA, root: Path) -> Path:
    h = hashlib.sha256(engine.signature.encode()).hexdigest()[:16]
    return root / f"memo-{h}.pkl"


def _enc(c):
    if isinstance(c, fmpz_poly):
        return ("p", tuple(int(x) for x in c.coeffs()))
    if isinstance(c, Fraction):
        return ("q", c.numerator, c.denominator)
    return int(c)


def _dec(c):
    if isinstance(c, tuple):
        if c[0] == "p":
            return fmpz_poly(list(c[1]))
        return Fraction(c[1], c[2])
    return c


def _encode_table(table: dict) -> dict:
    return {k: {m: _enc(c) for m, c in v.items()} for k, v in table.items()}


def _decode_table(table: dict) -> dict:
    return {k: {m: _dec(c) for m, c in v.items()} for k, v in table.items()}


def load(engine: AffineVA, path=None) -> int:
    """Fill the engine's memo tables from disk; returns the number of entries loaded."""
    f = _file_for(engine, cache_dir(path))
    if not f.exists():
        return 0
    try:
        with open(f, "rb") as fh:
            blob = pickle.load(fh)
        if blob.get("schema") != CACHE_SCHEMA or blob.get("signature") != engine.signature:
            raise ValueError("header mismatch")
        tables = {name: _decode_table(blob["tables"][name]) for name in TABLES}
    except Exception as exc:
        log.warning("cache file %s is unreadable (%s); rebuilding", f, exc)
        try:
            f.unlink()
        except OSError:
            pass
        return 0
    n = 0
    for name, table in tables.items():
        getattr(engine, name).update(table)
        n += len(table)
    return n


def save(engine: AffineVA, path=None) -> Path:
    root = cache_dir(path)
    root.mkdir(parents=True, exist_ok=True)
    f = _file_for(engine, root)
    blob = {"schema": CACHE_SCHEMA, "signature": engine.signature,
            "tables": {name: _encode_table(getattr(engine, name)) for name in TABLES}}
    tmp = f.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        pickle.dump(blob, fh, protocol=pickle.HIGHEST_PROTOCOL)
    os.replace(tmp, f)
    return f


def stats(path=None) -> dict:
    root = cache_dir(path)
    files = sorted(root.glob("memo-*.pkl")) if root.exists() else []
    out = {"path": str(root), "files": [], "entries": 0}
    for f in files:
        try:
            with open(f, "rb") as fh:
                blob = pickle.load(fh)
            n = sum(len(blob["tables"][t]) for t in TABLES)
            out["files"].append({"file": f.name, "signature": blob["signature"], "entries": n})
            out["entries"] += n
        except Exception:
            out["files"].append({"file": f.name, "signature": None, "entries": 0, "corrupt": True})
    return out


def clear(path=None) -> int:
    root = cache_dir(path)
    n = 0
    if root.exists():
        for f in root.glob("memo-*.pkl"):
            f.unlink()
            n += 1
    return n
