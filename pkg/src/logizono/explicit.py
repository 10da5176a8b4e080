"""Enumerated sets of binary vectors: the brute-force correctness oracle.

Every generator-space operation in the library is validated against the
pointwise semantics implemented here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .binvec import BinaryVector, Gate, bv_not, bv_op
from .errors import CapacityError, DimensionError

DEFAULT_POINT_CAP = 2**20


@dataclass(frozen=True)
class ExplicitSet:
    dim: int
    points: frozenset

    def __post_init__(self):
        if not self.points:
            raise ValueError("explicit set must be non-empty")
        for p in self.points:
            if p.dim != self.dim:
                raise DimensionError("point dimension mismatch")

    @staticmethod
    def from_points(points):
        points = list(points)
        return ExplicitSet(points[0].dim, frozenset(points))

    @staticmethod
    def from_strings(texts):
        return ExplicitSet.from_points(BinaryVector.from_string(t) for t in texts)

    @staticmethod
    def singleton(point):
        return ExplicitSet(point.dim, frozenset((point,)))

    def __len__(self):
        return len(self.points)

    def __contains__(self, point):
        return point in self.points

    def __iter__(self):
        return iter(sorted(self.points, key=lambda p: p.bits))

    def to_strings(self):
        return [p.to_string() for p in self]


def set_minkowski(a: ExplicitSet, b: ExplicitSet, gate: Gate) -> ExplicitSet:
    """Pointwise image of a two-input gate over all operand pairs."""
    if a.dim != b.dim:
        raise DimensionError(f"dim {a.dim} vs {b.dim}")
    return ExplicitSet(
        a.dim,
        frozenset(bv_op(x, y, gate) for x in a.points for y in b.points),
    )


def set_not(a: ExplicitSet) -> ExplicitSet:
    return ExplicitSet(a.dim, frozenset(bv_not(p) for p in a.points))


def reach_explicit(model, steps, *, break_next_state_deps=False,
                   cap=DEFAULT_POINT_CAP):
    """Exact N-step reachability over joint states.

    The joint state is the concatenation of all state variables in
    declaration order. Each step enumerates every (state, input) sample
    and evaluates all updates against that one shared sample, so a
    reference to an already-computed next-state value inside a later
    update resolves consistently within the sample.

    With break_next_state_deps, next-state references instead range
    independently over the set of values the referenced update can take
    at this step, which mimics analyses that cannot carry the intra-step
    dependency.

    Returns the list [R_0, ..., R_steps] of joint ExplicitSets.
    """
    from .model import eval_concrete, next_state_refs

    names = [v.name for v in model.state_vars]
    dims = [v.dim for v in model.state_vars]
    order = model.order

    def joint(vecs):
        bits = 0
        off = 0
        for v in vecs:
            bits |= v.bits << off
            off += v.dim
        return BinaryVector(off, bits)

    def split(v):
        out = {}
        off = 0
        for name, d in zip(names, dims):
            out[name] = BinaryVector(d, (v.bits >> off) & ((1 << d) - 1))
            off += d
        return out

    initial = [
        joint(vecs)
        for vecs in itertools.product(*[v.init for v in model.state_vars])
    ]
    result = [ExplicitSet.from_points(initial)]

    primed_refs = {name: sorted(next_state_refs(model.updates[name]))
                   for name in order}

    for k in range(steps):
        input_sets = [model.input_set(v, k) for v in model.input_vars]
        seen = set()
        points = []
        if break_next_state_deps:
            next_sets = _next_value_sets(model, result[-1], input_sets, split)
        for state in result[-1].points:
            env_base = split(state)
            for sample in itertools.product(*input_sets):
                env = dict(env_base)
                for var, val in zip(model.input_vars, sample):
                    env[var.name] = val
                if break_next_state_deps:
                    for vecs in _independent_primed(model, env, primed_refs,
                                                    next_sets):
                        _record(vecs, joint, seen, points, cap, k)
                else:
                    vals = []
                    for name in order:
                        v = eval_concrete(model.updates[name], env)
                        env[name + "'"] = v
                        vals.append(v)
                    _record(vals, joint, seen, points, cap, k)
        result.append(ExplicitSet.from_points(points))
    return result


def _record(vecs, joint, seen, points, cap, step):
    v = joint(vecs)
    if v not in seen:
        if len(seen) >= cap:
            raise CapacityError(f"joint state count exceeds cap {cap}",
                                step=step + 1)
        seen.add(v)
        points.append(v)


def _next_value_sets(model, reached, input_sets, split):
    """Per-variable sets of possible next values, dependency-preserving."""
    from .model import eval_concrete

    out = {name: set() for name in model.order}
    for state in reached.points:
        env_base = split(state)
        for sample in itertools.product(*input_sets):
            env = dict(env_base)
            for var, val in zip(model.input_vars, sample):
                env[var.name] = val
            for name in model.order:
                v = eval_concrete(model.updates[name], env)
                env[name + "'"] = v
                out[name].add(v)
    return {name: sorted(vals, key=lambda p: p.bits)
            for name, vals in out.items()}


def _independent_primed(model, env, primed_refs, next_sets):
    """Yield next-state tuples with primed references drawn independently."""
    from .model import eval_concrete

    axes = sorted({r for name in model.order for r in primed_refs[name]})
    for combo in itertools.product(*[next_sets[a] for a in axes]):
        env2 = dict(env)
        for a, val in zip(axes, combo):
            env2[a + "'"] = val
        vals = []
        for name in model.order:
            v = eval_concrete(model.updates[name], env2)
            vals.append(v)
        yield vals
