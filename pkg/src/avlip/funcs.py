"""Exactly represented functions on [0,1]: piecewise-linear and step functions,
lazy named families, pointwise algebra, regularization, JSON (de)serialization.

All coordinates and values are exact rationals.  The two concrete classes are

* :class:`PiecewiseLinear` - breakpoint/value lists, evaluated by linear
  interpolation (continuous);
* :class:`StepFunction` - constant between interior jump points, with an
  explicit value *at* each jump that may differ from both one-sided limits.

The remaining spec types (:class:`AltHarmonic`, :class:`DyadicWitness`,
:class:`PackingWitness`, :class:`XSinInvX`) are lazy descriptors; they
materialize to a concrete class via :mod:`avlip.constructions`.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .rational import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fractions(xs: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on [0,1].

    ``breakpoints`` is strictly increasing with first point 0 and last point 1;
    ``values`` has the same length.  ``exact`` is False for members whose node
    values only approximate a target function (currently the x*sin(1/x)
    family); all arithmetic on the stored rationals is still exact.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    exact: bool = field(default=True, compare=False)

    def __post_init__(self):
        bps = _as_fractions(self.breakpoints)
        vals = _as_fractions(self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) < 2:
            raise ValueError("need at least two breakpoints")
        if len(bps) != len(vals):
            raise ValueError("breakpoints and values must have equal length")
        if bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def piece_slopes(self) -> tuple[Fraction, ...]:
        b, v = self.breakpoints, self.values
        return tuple((v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1))

    def value_at(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError(f"point {x} outside [0,1]")
        b, v = self.breakpoints, self.values
        i = bisect_right(b, x) - 1
        if b[i] == x:
            return v[i]
        return v[i] + (v[i + 1] - v[i]) * (x - b[i]) / (b[i + 1] - b[i])


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function with explicit values at its jump points.

    ``jump_points`` lie strictly inside (0,1).  ``segment_values`` has one
    entry more than ``jump_points``: the constant on each maximal open
    interval between consecutive jumps (closed at the domain ends).
    ``point_values[i]`` is the value exactly at ``jump_points[i]`` and may
    differ from both one-sided limits, so a jump contributes
    |point - left| + |right - point| to the variation.
    """

    jump_points: tuple[Fraction, ...]
    point_values: tuple[Fraction, ...]
    segment_values: tuple[Fraction, ...]

    def __post_init__(self):
        jp = _as_fractions(self.jump_points)
        pv = _as_fractions(self.point_values)
        sv = _as_fractions(self.segment_values)
        object.__setattr__(self, "jump_points", jp)
        object.__setattr__(self, "point_values", pv)
        object.__setattr__(self, "segment_values", sv)
        if len(sv) != len(jp) + 1:
            raise ValueError("need exactly one segment value more than jump points")
        if len(pv) != len(jp):
            raise ValueError("one point value per jump point")
        if any(x <= 0 or x >= 1 for x in jp):
            raise ValueError("jump points must lie strictly inside (0,1)")
        if any(a >= b for a, b in zip(jp, jp[1:])):
            raise ValueError("jump points must be strictly increasing")

    @property
    def left_limits(self) -> tuple[Fraction, ...]:
        return self.segment_values[:-1]

    @property
    def right_limits(self) -> tuple[Fraction, ...]:
        return self.segment_values[1:]

    def value_at(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError(f"point {x} outside [0,1]")
        i = bisect_left(self.jump_points, x)
        if i < len(self.jump_points) and self.jump_points[i] == x:
            return self.point_values[i]
        return self.segment_values[bisect_right(self.jump_points, x)]

    def is_right_continuous(self) -> bool:
        return all(p == r for p, r in zip(self.point_values, self.right_limits))


@dataclass(frozen=True)
class AltHarmonic:
    """Alternating-harmonic node family: nodes 1/n carry the partial sums
    1 - 1/2 + ... +- 1/n, truncated at n = N and linearly interpolated."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class DyadicWitness:
    """+-gamma values prescribed at the dyadic points 2^-1, ..., 2^-m."""

    labels: tuple[int, ...]
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(s) for s in self.labels))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if not self.labels or any(s not in (-1, 1) for s in self.labels):
            raise ValueError("labels must be a nonempty +-1 sequence")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class PackingWitness:
    """+-gamma values on an equispaced packing of pitch 2*gamma/L; the
    interpolant's slopes never exceed L in magnitude."""

    labels: tuple[int, ...]
    gamma: Fraction
    lipschitz: Fraction

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(s) for s in self.labels))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "lipschitz", Fraction(self.lipschitz))
        if not self.labels or any(s not in (-1, 1) for s in self.labels):
            raise ValueError("labels must be a nonempty +-1 sequence")
        if self.gamma <= 0 or self.lipschitz <= 0:
            raise ValueError("gamma and lipschitz must be positive")


@dataclass(frozen=True)
class XSinInvX:
    """Interpolant of x*sin(1/x) at its near-extrema 2/((2k+1)pi), k <= depth.

    The only family whose node data is approximate; expansions carry
    ``exact=False``.
    """

    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


FunctionSpec = Union[
    PiecewiseLinear, StepFunction, AltHarmonic, DyadicWitness, PackingWitness, XSinInvX
]

ConcreteFunction = Union[PiecewiseLinear, StepFunction]


def materialize(f: FunctionSpec) -> ConcreteFunction:
    """Expand a lazy descriptor to its concrete representation (identity on
    PiecewiseLinear/StepFunction)."""
    if isinstance(f, (PiecewiseLinear, StepFunction)):
        return f
    from . import constructions  # deferred: constructions imports this module

    return constructions.expand(f)


def evaluate(f: FunctionSpec, x: Fraction) -> Fraction:
    """Exact value of `f` at x in [0,1].

    Step functions evaluate to their stored point value at a jump.
    """
    return materialize(f).value_at(Fraction(x))


def scale(f: FunctionSpec, alpha: Fraction) -> ConcreteFunction:
    """Exact pointwise alpha*f."""
    alpha = Fraction(alpha)
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        return PiecewiseLinear(
            g.breakpoints, tuple(alpha * v for v in g.values), exact=g.exact
        )
    return StepFunction(
        g.jump_points,
        tuple(alpha * v for v in g.point_values),
        tuple(alpha * v for v in g.segment_values),
    )


def add(f: FunctionSpec, g: FunctionSpec) -> PiecewiseLinear:
    """Exact pointwise f+g on the merged breakpoint set.

    Both operands must expand to PiecewiseLinear; sums involving step
    functions are not part of the model.
    """
    fm, gm = materialize(f), materialize(g)
    if not isinstance(fm, PiecewiseLinear) or not isinstance(gm, PiecewiseLinear):
        raise TypeError("add is defined for piecewise-linear operands only")
    merged = sorted(set(fm.breakpoints) | set(gm.breakpoints))
    vals = tuple(fm.value_at(x) + gm.value_at(x) for x in merged)
    return PiecewiseLinear(tuple(merged), vals, exact=fm.exact and gm.exact)


def is_monotone_step(f: StepFunction) -> bool:
    seq: list[Fraction] = [f.segment_values[0]]
    for pv, sv in zip(f.point_values, f.segment_values[1:]):
        seq.append(pv)
        seq.append(sv)
    return all(a <= b for a, b in zip(seq, seq[1:])) or all(
        a >= b for a, b in zip(seq, seq[1:])
    )


def regularize(f: StepFunction) -> StepFunction:
    """Right-continuous version of a monotone step function: the value at
    every jump is replaced by the right limit there.

    The value at 0 is likewise the right limit at 0; in this representation
    that holds by construction (jumps are interior), so no adjustment is
    needed at the domain ends.  Raises on non-monotone input.
    """
    if not is_monotone_step(f):
        raise ValueError("regularize requires a monotone step function")
    return StepFunction(f.jump_points, f.right_limits, f.segment_values)


# ---------------------------------------------------------------------------
# JSON wire format.  Rationals travel as strings ("p/q", integer or decimal);
# serialization is canonical so parse(serialize(f)) == f exactly.
# ---------------------------------------------------------------------------


def to_json_obj(f: FunctionSpec) -> dict:
    if isinstance(f, PiecewiseLinear):
        obj = {
            "kind": "plf",
            "breakpoints": [format_rational(x) for x in f.breakpoints],
            "values": [format_rational(v) for v in f.values],
        }
        if not f.exact:
            obj["exact"] = False
        return obj
    if isinstance(f, StepFunction):
        return {
            "kind": "step",
            "jump_points": [format_rational(x) for x in f.jump_points],
            "point_values": [format_rational(v) for v in f.point_values],
            "segment_values": [format_rational(v) for v in f.segment_values],
        }
    if isinstance(f, AltHarmonic):
        return {"kind": "alt_harmonic", "n": f.n}
    if isinstance(f, DyadicWitness):
        return {
            "kind": "dyadic",
            "labels": list(f.labels),
            "gamma": format_rational(f.gamma),
        }
    if isinstance(f, PackingWitness):
        return {
            "kind": "packing",
            "labels": list(f.labels),
            "gamma": format_rational(f.gamma),
            "lipschitz": format_rational(f.lipschitz),
        }
    if isinstance(f, XSinInvX):
        return {"kind": "xsininvx", "depth": f.depth}
    raise TypeError(f"not a function spec: {f!r}")


def from_json_obj(obj: dict) -> FunctionSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("function spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "plf":
        return PiecewiseLinear(
            tuple(parse_rational(s) for s in obj["breakpoints"]),
            tuple(parse_rational(s) for s in obj["values"]),
            exact=bool(obj.get("exact", True)),
        )
    if kind == "step":
        return StepFunction(
            tuple(parse_rational(s) for s in obj["jump_points"]),
            tuple(parse_rational(s) for s in obj["point_values"]),
            tuple(parse_rational(s) for s in obj["segment_values"]),
        )
    if kind == "alt_harmonic":
        return AltHarmonic(int(obj["n"]))
    if kind == "dyadic":
        return DyadicWitness(tuple(obj["labels"]), parse_rational(obj["gamma"]))
    if kind == "packing":
        return PackingWitness(
            tuple(obj["labels"]),
            parse_rational(obj["gamma"]),
            parse_rational(obj["lipschitz"]),
        )
    if kind == "xsininvx":
        return XSinInvX(int(obj["depth"]))
    raise ValueError(f"unknown function spec kind: {kind!r}")


def dumps(f: FunctionSpec, **kwargs) -> str:
    return json.dumps(to_json_obj(f), **kwargs)


def loads(text: str) -> FunctionSpec:
    return from_json_obj(json.loads(text))


def load_spec_file(path: str) -> FunctionSpec:
    with open(path, encoding="utf-8") as fh:
        return from_json_obj(json.load(fh))
