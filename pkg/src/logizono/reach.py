"""N-step reachability over the explicit, logical, and poly algebras.

Each step encloses the step's input sets, evaluates every update in
declaration order (next-state references see the values already computed
this step), and records per-variable sets plus the joint size, i.e. the
number of distinct concatenated state vectors.

To keep long horizons tractable the engine renormalizes the state after
every step into an equivalent exact encoding of the reached sets: the
logical lane reduces each variable's generators to an independent basis
(set-preserving), the poly lanes re-encode the reached point sets over a
fresh compact factor vector (set-preserving per variable, and
joint-preserving in exact mode where all variables share one factor
vector). When the renormalized state and the input sets repeat, the run
has hit a fixpoint and the remaining steps are filled in without
iterating.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass

from .binvec import BinaryMatrix, BinaryVector, Gate
from .errors import CapacityError, ModelError
from . import explicit as ex
from . import logical as lz
from . import poly as pz
from .model import Const, GateExpr, Not, VarRef, eval_expr

ALGEBRAS = ("explicit", "logical", "poly")
DEFAULT_JOINT_CAP = 2**20
_MAX_SHARED_FACTORS = 22


@dataclass(frozen=True)
class StepRecord:
    step: int
    var_sets: dict  # name -> ExplicitSet
    joint_size: int
    wall_time: float
    joint_set: object = None  # ExplicitSet when the lane tracks it exactly


@dataclass(frozen=True)
class ReachResult:
    algebra: str
    mode: str
    records: tuple
    fixpoint_at: int = -1  # first step whose state repeats the previous one

    def sizes(self):
        return [r.joint_size for r in self.records]

    def record(self, step):
        return self.records[step]


# --- joint enumeration ------------------------------------------------------

def _components(state):
    """Group poly state variables into id-sharing connected components."""
    names = list(state)
    parent = {n: n for n in names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for n in names:
        for ident in state[n].id:
            if ident in owner:
                parent[find(n)] = find(owner[ident])
            else:
                owner[ident] = n
    groups = {}
    for n in names:
        groups.setdefault(find(n), []).append(n)
    return list(groups.values())


def _component_vectors(state, names, cap):
    """Distinct concatenated vectors of one id-sharing component."""
    ids = sorted({i for n in names for i in state[n].id})
    if len(ids) > _MAX_SHARED_FACTORS:
        raise CapacityError(
            f"{len(ids)} shared factors exceed the joint enumeration cap")
    tables = [pz.value_table(state[n], ids) for n in names]
    dims = [state[n].dim for n in names]
    out = set()
    for i in range(1 << len(ids)):
        vec = 0
        off = 0
        for t, d in zip(tables, dims):
            vec |= t[i] << off
            off += d
        out.add(vec)
        if len(out) > cap:
            raise CapacityError(f"joint size exceeds cap {cap}")
    return out


def poly_joint_set(state, cap=DEFAULT_JOINT_CAP):
    """Joint set over the union of all identifiers, as an ExplicitSet."""
    names = list(state)
    comps = _components(state)
    partial = {}
    for comp in comps:
        partial[tuple(comp)] = _component_vectors(state, comp, cap)
    vectors = [0]
    offsets = {}
    off = 0
    for n in names:
        offsets[n] = off
        off += state[n].dim
    for comp in comps:
        placed = []
        base = offsets[comp[0]]
        comp_off = {}
        o = 0
        for n in comp:
            comp_off[n] = o
            o += state[n].dim
        for vec in partial[tuple(comp)]:
            placed.append(sum(
                (((vec >> comp_off[n]) & ((1 << state[n].dim) - 1))
                 << offsets[n]) for n in comp))
        vectors = [v | q for v in vectors for q in placed]
        if len(vectors) > cap:
            raise CapacityError(f"joint size exceeds cap {cap}")
    dim = off
    return ex.ExplicitSet(dim, frozenset(
        BinaryVector(dim, v) for v in set(vectors)))


def joint_size(state, algebra, cap=DEFAULT_JOINT_CAP):
    """Count of distinct concatenated state vectors.

    explicit: cardinality of the joint set. logical: each variable's
    generators vary independently, so the product of the per-variable
    set sizes. poly: enumeration over the union of all identifiers;
    variables sharing no identifiers contribute multiplicatively.
    """
    if algebra == "explicit":
        return len(state)
    if algebra == "logical":
        total = 1
        for z in state.values():
            total *= len(lz.lz_evaluate(z))
            if total > cap:
                raise CapacityError(f"joint size exceeds cap {cap}")
        return total
    if algebra == "poly":
        total = 1
        for comp in _components(state):
            total *= len(_component_vectors(state, comp, cap))
            if total > cap:
                raise CapacityError(f"joint size exceeds cap {cap}")
        return total
    raise ModelError(f"unknown algebra {algebra!r}")


# --- the engine -------------------------------------------------------------

def reach(model, steps, algebra, mode="minkowski", *,
          break_next_state_deps=False, cap=DEFAULT_JOINT_CAP):
    """Run reachability for max(steps) steps, recording every step.

    steps may be an int or a list of step counts.
    """
    requested = [steps] if isinstance(steps, int) else sorted(steps)
    horizon = max(requested) if requested else 0
    if algebra not in ALGEBRAS:
        raise ModelError(f"unknown algebra {algebra!r}")
    if mode == "exact" and algebra != "poly":
        raise ModelError("exact mode requires the poly algebra")
    if break_next_state_deps and algebra != "explicit":
        raise ModelError(
            "break-next-state-deps applies to the explicit oracle only")
    if algebra == "explicit":
        return _reach_explicit(model, horizon, break_next_state_deps, cap)
    return _reach_lane(model, horizon, algebra, mode, cap)


def _reach_explicit(model, horizon, break_deps, cap):
    t0 = time.perf_counter()
    joints = ex.reach_explicit(model, horizon,
                               break_next_state_deps=break_deps, cap=cap)
    elapsed = time.perf_counter() - t0
    records = []
    for k, joint in enumerate(joints):
        # the oracle runs in one pass; the run's total time is reported
        # on every step past 0
        records.append(StepRecord(k, _projections(model, joint), len(joint),
                                  elapsed if k else 0.0, joint))
    return ReachResult("explicit", "minkowski", tuple(records))


def _projections(model, joint):
    out = {}
    off = 0
    for var in model.state_vars:
        pts = {BinaryVector(var.dim, (p.bits >> off) & ((1 << var.dim) - 1))
               for p in joint.points}
        out[var.name] = ex.ExplicitSet(var.dim, frozenset(pts))
        off += var.dim
    return out


def _inputs_constant(model):
    return all(v.constant for v in model.input_vars)


def _reach_lane(model, horizon, algebra, mode, cap):
    if algebra == "logical":
        state = {v.name: lz.lz_reduce(lz.lz_enclose_points(v.init))
                 for v in model.state_vars}
    else:
        state = {v.name: pz.pz_enclose_points(v.init)
                 for v in model.state_vars}
    records = [_record(model, state, algebra, mode, 0, 0.0, cap)]
    fixpoint_at = -1
    prev_key = _state_key(state, algebra, mode, cap)
    k = 0
    while k < horizon:
        t0 = time.perf_counter()
        state = _step(model, state, algebra, mode, k)
        state = _renormalize(state, algebra, mode, cap)
        elapsed = time.perf_counter() - t0
        k += 1
        records.append(_record(model, state, algebra, mode, k, elapsed, cap))
        key = _state_key(state, algebra, mode, cap)
        if key == prev_key and _inputs_constant(model):
            fixpoint_at = k
            last = records[-1]
            for j in range(k + 1, horizon + 1):
                records.append(StepRecord(j, last.var_sets, last.joint_size,
                                          0.0, last.joint_set))
            break
        prev_key = key
    return ReachResult(algebra, mode, tuple(records), fixpoint_at)


def _step(model, state, algebra, mode, k):
    if algebra == "poly" and mode == "minkowski":
        return _step_minkowski_sets(model, state, k)
    env = dict(state)
    for var in model.input_vars:
        points = model.input_set(var, k)
        env[var.name] = (lz.lz_reduce(lz.lz_enclose_points(points))
                         if algebra == "logical"
                         else pz.pz_enclose_points(points))
    new_state = {}
    for name in model.order:
        nxt = eval_expr(model.updates[name], env, algebra, mode)
        if algebra == "poly":
            nxt = pz.pz_compact(nxt)
        env[name + "'"] = nxt
        new_state[name] = nxt
    return {v.name: new_state[v.name] for v in model.state_vars}


def _step_minkowski_sets(model, state, k):
    """Minkowski poly step computed in the set domain.

    Every Minkowski operation is an exact pointwise image with operands
    treated independently, so composing set images gives the same
    per-variable sets as the generator-space computation; the result is
    re-encoded as polynomial zonotopes afterwards.
    """
    env = {name: pz.pz_evaluate(z) for name, z in state.items()}
    for var in model.input_vars:
        env[var.name] = ex.ExplicitSet.from_points(model.input_set(var, k))
    new_state = {}
    for name in model.order:
        s = _eval_mink_sets(model.updates[name], env)
        env[name + "'"] = s
        new_state[name] = pz.pz_encode_points(s.points)
    return {v.name: new_state[v.name] for v in model.state_vars}


def _eval_mink_sets(expr, env):
    if isinstance(expr, VarRef):
        return env[expr.key]
    if isinstance(expr, Const):
        return ex.ExplicitSet.singleton(expr.value)
    if isinstance(expr, Not):
        return ex.set_not(_eval_mink_sets(expr.child, env))
    return ex.set_minkowski(_eval_mink_sets(expr.left, env),
                            _eval_mink_sets(expr.right, env), expr.kind)


def _renormalize(state, algebra, mode, cap):
    if algebra == "logical":
        return {name: lz.lz_reduce(z) for name, z in state.items()}
    if mode == "exact":
        joint = poly_joint_set(state, cap)
        stacked = pz.pz_encode_points(joint.points)
        return _slices(stacked, state)
    return state  # minkowski states are re-encoded inside the step


def _slices(stacked, state):
    """Per-variable slices of a stacked zonotope, sharing its factors."""
    out = {}
    off = 0
    for name, z in state.items():
        dim = z.dim
        mask = (1 << dim) - 1
        c = BinaryVector(dim, (stacked.c.bits >> off) & mask)
        gcols = []
        ecols = []
        for g, e in zip(stacked.G.columns, stacked.E.columns):
            bits = (g.bits >> off) & mask
            if bits:
                gcols.append(BinaryVector(dim, bits))
                ecols.append(e)
        out[name] = pz.PolyLogicalZonotope(
            c, BinaryMatrix(dim, tuple(gcols)),
            BinaryMatrix(stacked.p, tuple(ecols)), stacked.id)
        off += dim
    return out


def _record(model, state, algebra, mode, step, elapsed, cap):
    if algebra == "logical":
        var_sets = {name: lz.lz_evaluate(z) for name, z in state.items()}
        return StepRecord(step, var_sets, joint_size(state, "logical", cap),
                          elapsed)
    var_sets = {name: pz.pz_evaluate(z) for name, z in state.items()}
    jset = poly_joint_set(state, cap) if mode == "exact" else None
    size = len(jset) if jset is not None else joint_size(state, "poly", cap)
    return StepRecord(step, var_sets, size, elapsed, jset)


def _state_key(state, algebra, mode, cap):
    if algebra == "poly" and mode == "exact":
        return tuple(sorted(p.bits for p in poly_joint_set(state, cap).points))
    if algebra == "logical":
        sets = {name: lz.lz_evaluate(z) for name, z in state.items()}
    else:
        sets = {name: pz.pz_evaluate(z) for name, z in state.items()}
    return tuple((name, tuple(sorted(p.bits for p in s.points)))
                 for name, s in sorted(sets.items()))


# --- reporting --------------------------------------------------------------

def reach_report(result, requested_steps, fmt="csv", *, model_path=None,
                 seed=None, dump_sets=False):
    """Render a result as CSV text or a JSON document."""
    rows = [(n, result.record(n).wall_time, result.record(n).joint_size)
            for n in requested_steps]
    if fmt == "csv":
        buf = io.StringIO()
        if seed is not None:
            buf.write(f"# seed={seed}\n")
        writer = csv.writer(buf)
        writer.writerow(["steps", "time_seconds", "size"])
        for n, t, s in rows:
            writer.writerow([n, f"{t:.6f}", s])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "algebra": result.algebra,
            "mode": result.mode,
            "seed": seed,
            "model": model_path,
            "rows": [{"steps": n, "time_seconds": t, "size": s}
                     for n, t, s in rows],
        }
        if dump_sets:
            doc["sets"] = {
                str(n): {name: sorted(s.to_strings())
                         for name, s in result.record(n).var_sets.items()}
                for n in requested_steps
            }
        return json.dumps(doc, indent=2)
    raise ModelError(f"unknown format {fmt!r}")


def parse_report(text):
    """Round-trip helper for JSON reports."""
    return json.loads(text)
