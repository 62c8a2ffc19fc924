"""Named demo scenarios; each returns a complete run-config dict."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _p(z):
    return [float(np.real(z)), float(np.imag(z))]


def _pairs(*zs):
    return [_p(z) for z in zs]


def _disc(map_spec, starts):
    return {
        "schema": "symdom.run/1",
        "factor": {"type": "hilbert", "dim": 1},
        "map": map_spec,
        "starts": starts,
        "iterations": 200,
        "seed": 0,
        "horofunction": {"frame": [_pairs(1.0)], "sigma": [1.0]},
        "slice": {
            "origin": _pairs(0.0),
            "e1": _pairs(1.0),
            "e2": _pairs(1j),
            "extent": [-1.0, 1.0, -1.0, 1.0],
            "resolution": 41,
        },
        "s_list": [0.5, 1.0, 2.0],
    }


def _bidisc(map_spec, sigma2=1.0):
    return {
        "schema": "symdom.run/1",
        "factor": {"type": "polydisc", "d": 2},
        "map": map_spec,
        "starts": [_pairs(0.1, 0.4j), _pairs(-0.2, 0.3)],
        "iterations": 200,
        "seed": 0,
        "horofunction": {
            "frame": [_pairs(1.0, 0.0), _pairs(0.0, 1.0)],
            "sigma": [1.0, sigma2],
        },
        "slice": {
            "origin": _pairs(0.0, 0.0),
            "e1": _pairs(1.0, 0.0),
            "e2": _pairs(0.0, 1.0),
            "extent": [-1.0, 1.0, -1.0, 1.0],
            "resolution": 41,
        },
        "s_list": [0.5, 1.0, 2.0],
    }


def demo_config(name: str) -> dict:
    if name == "disc-hyperbolic":
        return _disc(
            {"pipeline": [{"op": "coordwise", "parts": [{"type": "mobius", "b": [0.5, 0.0]}]}]},
            [_pairs(0.0), _pairs(0.3j)],
        )
    if name == "disc-parabolic-affine":
        return _disc(
            {"pipeline": [{"op": "coordwise", "parts": [
                {"type": "affine", "alpha": [0.5, 0.0], "beta": [0.5, 0.0]}]}]},
            [_pairs(0.0), _pairs(-0.4)],
        )
    if name in ("bidisc-case-a", "bidisc-case-c"):
        return _bidisc({"scenario": name, "b": [0.5, 0.0]})
    if name == "bidisc-case-b":
        return _bidisc(
            {"pipeline": [{"op": "coordwise", "parts": [
                {"type": "mobius", "b": [0.5, 0.0]},
                {"type": "mobius", "b": [0.5, 0.0]}]}]},
        )
    if name == "bidisc-rotation":
        th = _GOLDEN_ANGLE
        return _bidisc(
            {"pipeline": [{"op": "coordwise", "parts": [
                {"type": "mobius", "b": [0.5, 0.0]},
                {"type": "affine", "alpha": [math.cos(th), math.sin(th)], "beta": [0.0, 0.0]}]}]},
        )
    if name == "hilbert3":
        c, s = math.cos(0.7), math.sin(0.7)
        u = [[_p(1), _p(0), _p(0)],
             [_p(0), _p(c), _p(-s)],
             [_p(0), _p(s), _p(c)]]
        return {
            "schema": "symdom.run/1",
            "factor": {"type": "hilbert", "dim": 3},
            "map": {"pipeline": [
                {"op": "isometry", "u": u},
                {"op": "transvection", "a": _pairs(0.5, 0.0, 0.0)},
            ]},
            "starts": [_pairs(0.0, 0.0, 0.0), _pairs(0.2, 0.3j, -0.1)],
            "iterations": 300,
            "seed": 0,
            "horofunction": {"frame": [_pairs(1.0, 0.0, 0.0)], "sigma": [1.0]},
            "slice": {
                "origin": _pairs(0.0, 0.0, 0.0),
                "e1": _pairs(1.0, 0.0, 0.0),
                "e2": _pairs(0.0, 1.0, 0.0),
                "extent": [-1.0, 1.0, -1.0, 1.0],
                "resolution": 31,
            },
            "s_list": [0.5, 1.0, 2.0],
        }
    if name == "spin4":
        r = 1.0 / math.sqrt(2.0)
        e = _pairs(r, r * 1j, 0.0, 0.0)
        return {
            "schema": "symdom.run/1",
            "factor": {"type": "spin", "dim": 4},
            "map": {"pipeline": [{"op": "transvection", "a": _pairs(0.4 * r, 0.4j * r, 0.0, 0.0)}]},
            "starts": [_pairs(0.0, 0.0, 0.0, 0.0), _pairs(0.1, 0.0, 0.2, 0.1j)],
            "iterations": 250,
            "seed": 0,
            "horofunction": {"frame": [e], "sigma": [1.0]},
            "slice": {
                "origin": _pairs(0.0, 0.0, 0.0, 0.0),
                "e1": _pairs(r, r * 1j, 0.0, 0.0),
                "e2": _pairs(r, -r * 1j, 0.0, 0.0),
                "extent": [-1.0, 1.0, -1.0, 1.0],
                "resolution": 31,
            },
            "s_list": [0.5, 1.0, 2.0],
        }
    if name == "rect22":
        return {
            "schema": "symdom.run/1",
            "factor": {"type": "rect", "rows": 2, "cols": 2},
            "map": {"pipeline": [{"op": "transvection", "a": _pairs(0.5, 0.0, 0.0, 0.0)}]},
            "starts": [_pairs(0.0, 0.0, 0.0, 0.3), _pairs(0.1, 0.05, 0.0, -0.2)],
            "iterations": 250,
            "seed": 0,
            "horofunction": {"frame": [_pairs(1.0, 0.0, 0.0, 0.0)], "sigma": [1.0]},
            "slice": {
                "origin": _pairs(0.0, 0.0, 0.0, 0.0),
                "e1": _pairs(1.0, 0.0, 0.0, 0.0),
                "e2": _pairs(0.0, 0.0, 0.0, 1.0),
                "extent": [-1.0, 1.0, -1.0, 1.0],
                "resolution": 31,
            },
            "s_list": [0.5, 1.0, 2.0],
        }
    raise ConfigError(f"unknown demo {name!r}; known: {', '.join(DEMO_NAMES)}")


DEMO_NAMES = (
    "disc-hyperbolic",
    "disc-parabolic-affine",
    "bidisc-case-a",
    "bidisc-case-b",
    "bidisc-case-c",
    "bidisc-rotation",
    "hilbert3",
    "spin4",
    "rect22",
)
