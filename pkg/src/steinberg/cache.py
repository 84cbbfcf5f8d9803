"""Versioned JSON persistence for KL stores.

File layout::

    {"format_version": 1,
     "cartan": {"series": "A", "rank": 3},
     "entries": [{"x": [..], "y": [..], "coeffs": [..]}, ...]}

``x`` and ``y`` are reduced words.  A file is validated completely before a
store is returned; anything wrong raises :class:`FormatError`.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .errors import FormatError, SteinbergError
from .kl import KLPoly, KLStore
from .roots import CartanType
from .weyl import WeylGroup, weyl_group

FORMAT_VERSION = 1


def cache_save(store: KLStore, path: str | os.PathLike) -> None:
    t = store.cartan_type
    payload = {
        "format_version": FORMAT_VERSION,
        "cartan": {"series": t.series, "rank": t.rank},
        "entries": [
            {"x": list(x.word), "y": list(y.word), "coeffs": list(p.coeffs)}
            for x, y, p in store.items()
        ],
    }
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, separators=(",", ":"))
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in value):
        raise FormatError(f"{what} must be a list of integers")
    return value


def cache_load(
    path: str | os.PathLike, cartan: CartanType | str | None = None, group: WeylGroup | None = None
) -> KLStore:
    """Read and validate a cache file; ``cartan`` pins the expected type."""
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not JSON ({exc})") from exc
    if not isinstance(payload, dict) or set(payload) != {"format_version", "cartan", "entries"}:
        raise FormatError(f"{path}: unexpected top-level layout")
    if payload["format_version"] != FORMAT_VERSION:
        raise FormatError(f"{path}: format_version {payload['format_version']!r}, expected {FORMAT_VERSION}")
    header = payload["cartan"]
    try:
        found = CartanType(header["series"], header["rank"])
    except (TypeError, KeyError, SteinbergError) as exc:
        raise FormatError(f"{path}: bad cartan header {header!r}") from exc
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    if group is not None:
        cartan = cartan or group.cartan_type
    if cartan is not None and found != cartan:
        raise FormatError(f"{path}: cache is for {found}, requested {cartan}")
    if group is None or group.cartan_type != found:
        group = weyl_group(found)
    if not isinstance(payload["entries"], list):
        raise FormatError(f"{path}: entries must be a list")

    store = KLStore(group)
    index = group.table.index
    staged = {}
    for n, entry in enumerate(payload["entries"]):
        if not isinstance(entry, dict) or set(entry) != {"x", "y", "coeffs"}:
            raise FormatError(f"{path}: entry {n} malformed")
        try:
            x = group.from_word(_int_list(entry["x"], "x"))
            y = group.from_word(_int_list(entry["y"], "y"))
        except SteinbergError as exc:
            raise FormatError(f"{path}: entry {n}: {exc}") from exc
        if x.length != len(entry["x"]) or y.length != len(entry["y"]):
            raise FormatError(f"{path}: entry {n}: words are not reduced")
        coeffs = _int_list(entry["coeffs"], "coeffs")
        if not group.bruhat_leq(x, y):
            raise FormatError(f"{path}: entry {n}: {x!r} is not below {y!r}")
        d = y.length - x.length
        if (
            not coeffs or coeffs[0] != 1 or coeffs[-1] == 0 or any(a < 0 for a in coeffs)
            or (d == 0 and coeffs != [1]) or (d > 0 and 2 * (len(coeffs) - 1) > d - 1)
        ):
            raise FormatError(f"{path}: entry {n}: coefficients {coeffs} violate the KL invariants")
        key = store.key(index[x], index[y])
        if key in staged:
            raise FormatError(f"{path}: entry {n}: duplicate pair ({x!r}, {y!r})")
        staged[key] = KLPoly(tuple(coeffs))
    store.polys.update(staged)
    return store
