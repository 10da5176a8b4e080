"""Model description language: variables, initial/input sets, updates.

Expressions use `!` for NOT, infix `&`, `^`, `|` (precedence ! > & > ^ > |),
function forms NAND(a,b) / NOR(a,b) / XNOR(a,b), parentheses, and bitstring
literals. A trailing apostrophe on a state identifier references its
already-computed next-state value within the same step.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .binvec import BinaryVector, Gate, bv_not, bv_op
from .errors import ModelError
from . import explicit as ex
from . import logical as lz
from . import poly as pz


# --- expression trees -------------------------------------------------------

@dataclass(frozen=True)
class VarRef:
    name: str
    primed: bool = False

    @property
    def key(self):
        return self.name + "'" if self.primed else self.name


@dataclass(frozen=True)
class Const:
    value: BinaryVector


@dataclass(frozen=True)
class Not:
    child: object


@dataclass(frozen=True)
class GateExpr:
    kind: Gate
    left: object
    right: object


_FUNC_GATES = {"NAND": Gate.NAND, "NOR": Gate.NOR, "XNOR": Gate.XNOR}

_TOKEN = re.compile(r"\s*(?:(?P<bits>[01]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'?)"
                    r"|(?P<punct>[!&^|(),]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ModelError(
                    f"unexpected character {text[pos]!r}", position=pos + 1)
            break
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value:
            raise ModelError(f"expected {value!r}, found {text or 'end'!r}",
                             position=pos)

    def parse(self):
        expr = self.parse_or()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ModelError(f"unexpected token {text!r}", position=pos)
        return expr

    def parse_or(self):
        left = self.parse_xor()
        while self.peek()[1] == "|":
            self.take()
            left = GateExpr(Gate.OR, left, self.parse_xor())
        return left

    def parse_xor(self):
        left = self.parse_and()
        while self.peek()[1] == "^":
            self.take()
            left = GateExpr(Gate.XOR, left, self.parse_and())
        return left

    def parse_and(self):
        left = self.parse_unary()
        while self.peek()[1] == "&":
            self.take()
            left = GateExpr(Gate.AND, left, self.parse_unary())
        return left

    def parse_unary(self):
        kind, text, pos = self.peek()
        if text == "!":
            self.take()
            return Not(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        kind, text, pos = self.take()
        if text == "(":
            expr = self.parse_or()
            self.expect(")")
            return expr
        if kind == "bits":
            return Const(BinaryVector.from_string(text))
        if kind == "name":
            base = text.rstrip("'")
            if base.upper() in _FUNC_GATES and self.peek()[1] == "(":
                self.take()
                left = self.parse_or()
                self.expect(",")
                right = self.parse_or()
                self.expect(")")
                return GateExpr(_FUNC_GATES[base.upper()], left, right)
            return VarRef(base, primed=text.endswith("'"))
        raise ModelError(f"expected an operand, found {text or 'end'!r}",
                         position=pos)


def parse_expr(text) -> object:
    return _Parser(text).parse()


def print_expr(expr):
    if isinstance(expr, VarRef):
        return expr.key
    if isinstance(expr, Const):
        return expr.value.to_string()
    if isinstance(expr, Not):
        return "!" + print_expr(expr.child)
    if expr.kind in (Gate.NAND, Gate.NOR, Gate.XNOR):
        return (f"{expr.kind.name}({print_expr(expr.left)}, "
                f"{print_expr(expr.right)})")
    op = {Gate.AND: "&", Gate.XOR: "^", Gate.OR: "|"}[expr.kind]
    return f"({print_expr(expr.left)} {op} {print_expr(expr.right)})"


def expr_refs(expr):
    if isinstance(expr, VarRef):
        yield expr
    elif isinstance(expr, Not):
        yield from expr_refs(expr.child)
    elif isinstance(expr, GateExpr):
        yield from expr_refs(expr.left)
        yield from expr_refs(expr.right)


def next_state_refs(expr):
    return {r.name for r in expr_refs(expr) if r.primed}


# --- models -----------------------------------------------------------------

@dataclass(frozen=True)
class StateVar:
    name: str
    dim: int
    init: tuple  # BinaryVectors


@dataclass(frozen=True)
class InputVar:
    name: str
    dim: int
    constant: tuple = ()  # same set every step
    per_step: tuple = ()  # tuple of tuples, one per step


@dataclass(frozen=True)
class Model:
    state_vars: tuple
    input_vars: tuple
    updates: dict
    order: tuple

    def input_set(self, var, step):
        if var.constant:
            return var.constant
        if step < len(var.per_step):
            return var.per_step[step]
        raise ModelError(
            f"input {var.name!r} has no set for step {step}")

    def state(self, name):
        for v in self.state_vars:
            if v.name == name:
                return v
        raise KeyError(name)


def _vectors(texts, dim, what):
    out = []
    for t in texts:
        v = BinaryVector.from_string(t)
        if v.dim != dim:
            raise ModelError(f"{what}: vector {t!r} has dim {v.dim}, "
                             f"expected {dim}")
        out.append(v)
    if not out:
        raise ModelError(f"{what}: set must be non-empty")
    return tuple(out)


def parse_model(document) -> Model:
    """Parse and validate a JSON model document (text, path, or dict)."""
    if isinstance(document, str):
        document = json.loads(document)
    states = []
    inputs = []
    for var in document.get("vars", []):
        name = var["name"]
        dim = int(var["dim"])
        role = var.get("role", "state")
        if role == "state":
            states.append(StateVar(name, dim,
                                   _vectors(var["init"], dim, name)))
        elif role == "input":
            if "set" in var:
                inputs.append(InputVar(name, dim,
                                       constant=_vectors(var["set"], dim, name)))
            else:
                steps = tuple(_vectors(s, dim, name) for s in var["steps"])
                if not steps:
                    raise ModelError(f"{name}: per-step input list is empty")
                inputs.append(InputVar(name, dim, per_step=steps))
        else:
            raise ModelError(f"{name}: unknown role {role!r}")
    declared = {v.name for v in states} | {v.name for v in inputs}
    updates = {}
    for name, text in document.get("updates", {}).items():
        if name not in {v.name for v in states}:
            raise ModelError(f"update for undeclared state {name!r}")
        updates[name] = parse_expr(text)
    order = tuple(document.get("order", [v.name for v in states]))
    if sorted(order) != sorted(v.name for v in states):
        raise ModelError("order must list every state variable exactly once")
    for name in order:
        if name not in updates:
            raise ModelError(f"state {name!r} has no update")
    seen = set()
    dims = {v.name: v.dim for v in states}
    dims.update({v.name: v.dim for v in inputs})
    for name in order:
        for ref in expr_refs(updates[name]):
            if ref.name not in declared:
                raise ModelError(
                    f"update of {name!r} references undeclared {ref.name!r}")
            if ref.primed:
                if ref.name not in dims or ref.name not in {v.name for v in states}:
                    raise ModelError(
                        f"next-state reference {ref.name!r}' is not a state")
                if ref.name not in seen:
                    raise ModelError(
                        f"update of {name!r} references {ref.name}' before "
                        f"it is computed")
        seen.add(name)
    return Model(tuple(states), tuple(inputs), updates, order)


def load_model(path) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(json.load(fh))


# --- evaluation -------------------------------------------------------------

def eval_concrete(expr, env):
    """Evaluate over concrete BinaryVectors; env maps reference keys."""
    if isinstance(expr, VarRef):
        return env[expr.key]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return bv_not(eval_concrete(expr.child, env))
    return bv_op(eval_concrete(expr.left, env),
                 eval_concrete(expr.right, env), expr.kind)


_LZ_GATES = {
    Gate.XOR: lz.lz_xor, Gate.AND: lz.lz_and, Gate.OR: lz.lz_or,
    Gate.XNOR: lz.lz_xnor, Gate.NAND: lz.lz_nand, Gate.NOR: lz.lz_nor,
}

_PZ_MINK = {
    Gate.XOR: pz.pz_mink_xor, Gate.AND: pz.pz_mink_and,
    Gate.OR: pz.pz_mink_or, Gate.XNOR: pz.pz_mink_xnor,
    Gate.NAND: pz.pz_mink_nand, Gate.NOR: pz.pz_mink_nor,
}

_PZ_EXACT = {
    Gate.XOR: pz.pz_exact_xor, Gate.AND: pz.pz_exact_and,
    Gate.OR: pz.pz_exact_or, Gate.XNOR: pz.pz_exact_xnor,
    Gate.NAND: pz.pz_exact_nand, Gate.NOR: pz.pz_exact_nor,
}


def eval_expr(expr, env, algebra, mode="minkowski"):
    """Evaluate an expression against a set algebra.

    algebra is one of "explicit", "logical", "poly"; mode "exact" is only
    meaningful for poly, where repeated references to one variable then
    share factors. The explicit algebra enumerates concrete samples with
    one shared sample per distinct variable, preserving dependencies.
    """
    if mode not in ("minkowski", "exact"):
        raise ModelError(f"unknown mode {mode!r}")
    if mode == "exact" and algebra != "poly":
        raise ModelError("exact mode requires the poly algebra")
    if algebra == "explicit":
        return _eval_explicit(expr, env)
    if algebra == "logical":
        return _eval_tree(expr, env, _LZ_GATES, lz.lz_not,
                          lz.LogicalZonotope.singleton)
    if algebra == "poly":
        gates = _PZ_EXACT if mode == "exact" else _PZ_MINK
        # compacting after every gate keeps intermediate generator counts
        # bounded by the number of distinct monomials without touching
        # any per-assignment value
        gates = {kind: (lambda fn: lambda a, b: pz.pz_compact(fn(a, b)))(fn)
                 for kind, fn in gates.items()}
        return _eval_tree(expr, env, gates, pz.pz_not,
                          pz.PolyLogicalZonotope.singleton)
    raise ModelError(f"unknown algebra {algebra!r}")


def _eval_tree(expr, env, gates, not_fn, singleton):
    if isinstance(expr, VarRef):
        return env[expr.key]
    if isinstance(expr, Const):
        return singleton(expr.value)
    if isinstance(expr, Not):
        return not_fn(_eval_tree(expr.child, env, gates, not_fn, singleton))
    return gates[expr.kind](
        _eval_tree(expr.left, env, gates, not_fn, singleton),
        _eval_tree(expr.right, env, gates, not_fn, singleton))


def _eval_explicit(expr, env):
    import itertools

    keys = sorted({r.key for r in expr_refs(expr)})
    sets = []
    for k in keys:
        s = env[k]
        sets.append(list(s.points) if isinstance(s, ex.ExplicitSet) else list(s))
    points = set()
    for combo in itertools.product(*sets):
        cenv = dict(zip(keys, combo))
        points.add(eval_concrete(expr, cenv))
    if not points:  # expression with no variables
        points.add(eval_concrete(expr, {}))
    return ex.ExplicitSet.from_points(points)
