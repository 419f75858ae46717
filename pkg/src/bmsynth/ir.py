"""In-memory representation of guarded-command transition-system templates.

A template is a finite-state machine network whose rules may contain *holes*
(choice parameters ranging over a finite menu of expressions).  Binding every
hole to one menu entry yields a concrete protocol.  States are bit vectors
packed into Python ints, one bit per declared variable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterator, Optional


class ModelError(Exception):
    """A template or query violates a structural requirement."""


class UnboundChoice(ModelError):
    """An expression with choice nodes was evaluated without a binding."""


class PartialInstantiation(ModelError):
    """An instantiation does not cover every declared parameter."""


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Const:
    value: bool


@dataclass(frozen=True, slots=True)
class Var:
    var: int  # dense variable handle


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class And:
    args: tuple["Expr", ...]


@dataclass(frozen=True, slots=True)
class Or:
    args: tuple["Expr", ...]


@dataclass(frozen=True, slots=True)
class Eq:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True, slots=True)
class Choice:
    """Reference to a hole.

    ``rot`` is the ring rotation applied to the selected menu entry: menu
    entries are written relative to machine 0, and a rule owned by machine
    ``i`` reads them rotated by ``i``.
    """

    param: int  # dense parameter handle
    rot: int = 0


Expr = Const | Var | Not | And | Or | Eq | Choice

TRUE = Const(True)
FALSE = Const(False)


def conj(args: list[Expr]) -> Expr:
    args = [a for a in args if a != TRUE]
    if any(a == FALSE for a in args):
        return FALSE
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(tuple(args))


def expr_vars(e: Expr) -> set[int]:
    """All variable handles read by ``e`` (choice menus not included)."""
    out: set[int] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            out.add(n.var)
        elif isinstance(n, Not):
            stack.append(n.arg)
        elif isinstance(n, (And, Or)):
            stack.extend(n.args)
        elif isinstance(n, Eq):
            stack.append(n.lhs)
            stack.append(n.rhs)
    return out


def expr_params(e: Expr) -> set[int]:
    out: set[int] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Choice):
            out.add(n.param)
        elif isinstance(n, Not):
            stack.append(n.arg)
        elif isinstance(n, (And, Or)):
            stack.extend(n.args)
        elif isinstance(n, Eq):
            stack.append(n.lhs)
            stack.append(n.rhs)
    return out


# ---------------------------------------------------------------------------
# Declarations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class VarDecl:
    """One Boolean state variable.

    Array variables (one copy per machine) carry their array name and the
    machine position; scalars have ``array=None`` and belong to machine 0.
    """

    name: str
    machine: int
    array: Optional[str] = None
    pos: int = 0


@dataclass(frozen=True, slots=True)
class ParamDecl:
    """A hole: an ordered, non-empty menu of candidate expressions.

    Menu entries are written in the machine-0 frame and must not contain
    nested choice nodes.
    """

    name: str
    domain: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Rule:
    name: str
    owner: int
    guard: Expr
    updates: tuple[tuple[int, Expr], ...]  # sorted by variable handle


Instantiation = tuple[int, ...]
State = int


# ---------------------------------------------------------------------------
# The template model
# ---------------------------------------------------------------------------

@dataclass(eq=True)
class TemplateModel:
    """Template transition system.  Treat as immutable after construction."""

    name: str
    nmachines: int
    ring: bool
    vars: tuple[VarDecl, ...]
    params: tuple[ParamDecl, ...]
    rules: tuple[Rule, ...]
    fixed: tuple[tuple[int, bool], ...]  # (var handle, pinned value)
    init: Expr
    owned: tuple[frozenset[int], ...] = ()
    readable: tuple[frozenset[int], ...] = ()
    history: frozenset[int] = frozenset()

    def __post_init__(self):
        if not self.owned:
            self.owned = default_ownership(self.nmachines, self.vars)
        if not self.readable:
            self.readable = tuple(
                frozenset(range(len(self.vars))) for _ in range(self.nmachines)
            )

    @cached_property
    def fixed_map(self) -> dict[int, bool]:
        return dict(self.fixed)

    @cached_property
    def free_vars(self) -> tuple[int, ...]:
        fx = self.fixed_map
        return tuple(i for i in range(len(self.vars)) if i not in fx)

    @cached_property
    def arrays(self) -> dict[str, tuple[int, ...]]:
        """Array name -> var handles ordered by machine position."""
        groups: dict[str, list[tuple[int, int]]] = {}
        for i, v in enumerate(self.vars):
            if v.array is not None:
                groups.setdefault(v.array, []).append((v.pos, i))
        return {a: tuple(i for _, i in sorted(g)) for a, g in groups.items()}

    @cached_property
    def var_by_name(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.vars)}

    def rotated_var(self, v: int, rot: int) -> int:
        """Shift an array variable ``rot`` machines around the ring."""
        d = self.vars[v]
        if d.array is None or rot % self.nmachines == 0:
            return v
        return self.arrays[d.array][(d.pos + rot) % self.nmachines]

    def rotate_expr(self, e: Expr, rot: int) -> Expr:
        if rot % self.nmachines == 0:
            return e
        if isinstance(e, Const):
            return e
        if isinstance(e, Var):
            return Var(self.rotated_var(e.var, rot))
        if isinstance(e, Not):
            return Not(self.rotate_expr(e.arg, rot))
        if isinstance(e, And):
            return And(tuple(self.rotate_expr(a, rot) for a in e.args))
        if isinstance(e, Or):
            return Or(tuple(self.rotate_expr(a, rot) for a in e.args))
        if isinstance(e, Eq):
            return Eq(self.rotate_expr(e.lhs, rot), self.rotate_expr(e.rhs, rot))
        if isinstance(e, Choice):
            return Choice(e.param, (e.rot + rot) % self.nmachines)
        raise ModelError(f"unknown expression node {e!r}")

    @cached_property
    def _menu_cache(self) -> dict[tuple[int, int, int], Expr]:
        return {}

    def menu_entry(self, param: int, index: int, rot: int) -> Expr:
        """Menu entry of a hole, rotated into the caller's machine frame."""
        key = (param, index, rot)
        cached = self._menu_cache.get(key)
        if cached is None:
            cached = self.rotate_expr(self.params[param].domain[index], rot)
            self._menu_cache[key] = cached
        return cached


def default_ownership(nmachines: int, vars: tuple[VarDecl, ...]) -> tuple[frozenset[int], ...]:
    own: list[set[int]] = [set() for _ in range(nmachines)]
    for i, v in enumerate(vars):
        own[v.machine].add(i)
    return tuple(frozenset(s) for s in own)


def validate_model(m: TemplateModel) -> None:
    """Raise ModelError on any violated structural invariant."""
    names = [v.name for v in m.vars] + [p.name for p in m.params]
    if len(set(names)) != len(names):
        raise ModelError(f"duplicate identifier in model {m.name!r}")
    if not m.rules:
        raise ModelError(f"model {m.name!r} declares no rules")
    nvars = len(m.vars)
    fx = m.fixed_map
    for p in m.params:
        if not p.domain:
            raise ModelError(f"parameter {p.name!r} has an empty menu")
        for e in p.domain:
            if expr_params(e):
                raise ModelError(f"parameter {p.name!r} has a nested hole in its menu")
            if any(v >= nvars for v in expr_vars(e)):
                raise ModelError(f"parameter {p.name!r} menu reads an undeclared variable")
    for r in m.rules:
        if not 0 <= r.owner < m.nmachines:
            raise ModelError(f"rule {r.name!r} has owner {r.owner} out of range")
        seen_updates = set()
        for v, _ in r.updates:
            if v in seen_updates:
                raise ModelError(f"rule {r.name!r} updates variable {m.vars[v].name} twice")
            seen_updates.add(v)
            if v not in m.owned[r.owner]:
                raise ModelError(
                    f"rule {r.name!r} writes {m.vars[v].name}, not owned by machine {r.owner}"
                )
            if v in fx:
                raise ModelError(f"rule {r.name!r} writes fixed variable {m.vars[v].name}")
        for e in [r.guard] + [e for _, e in r.updates]:
            for v in expr_vars(e):
                if v not in m.readable[r.owner]:
                    raise ModelError(
                        f"rule {r.name!r} reads {m.vars[v].name}, "
                        f"not visible to machine {r.owner}"
                    )
            for p in expr_params(e):
                if p >= len(m.params):
                    raise ModelError(f"rule {r.name!r} references an undeclared hole")
    if any(v >= nvars for v in expr_vars(m.init)):
        raise ModelError("init predicate reads an undeclared variable")
    if expr_params(m.init):
        raise ModelError("init predicate may not contain holes")


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

def state_get(s: State, v: int) -> bool:
    return bool((s >> v) & 1)


def state_set(s: State, v: int, value: bool) -> State:
    return s | (1 << v) if value else s & ~(1 << v)


def state_from_assign(m: TemplateModel, assign: dict[str, bool]) -> State:
    s = 0
    for name, value in assign.items():
        s = state_set(s, m.var_by_name[name], value)
    return s


def fixed_consistent_states(m: TemplateModel) -> Iterator[State]:
    """All states whose fixed variables hold their pinned values."""
    base = 0
    for v, value in m.fixed:
        base = state_set(base, v, value)
    free = m.free_vars
    for bits in range(1 << len(free)):
        s = base
        for j, v in enumerate(free):
            if (bits >> j) & 1:
                s |= 1 << v
        yield s


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_expr(m: TemplateModel, e: Expr, s: State, inst: Optional[Instantiation] = None) -> bool:
    if isinstance(e, Var):
        return bool((s >> e.var) & 1)
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return not eval_expr(m, e.arg, s, inst)
    if isinstance(e, And):
        return all(eval_expr(m, a, s, inst) for a in e.args)
    if isinstance(e, Or):
        return any(eval_expr(m, a, s, inst) for a in e.args)
    if isinstance(e, Eq):
        return eval_expr(m, e.lhs, s, inst) == eval_expr(m, e.rhs, s, inst)
    if isinstance(e, Choice):
        if inst is None or e.param >= len(inst):
            raise UnboundChoice(f"hole {m.params[e.param].name!r} has no binding")
        return eval_expr(m, m.menu_entry(e.param, inst[e.param], e.rot), s, inst)
    raise ModelError(f"unknown expression node {e!r}")


def apply_rule(m: TemplateModel, r: Rule, s: State, inst: Optional[Instantiation] = None) -> State:
    # All right-hand sides are read from the old state: one atomic move.
    out = s
    for v, e in r.updates:
        out = state_set(out, v, eval_expr(m, e, s, inst))
    return out


def rule_enabled(m: TemplateModel, r: Rule, s: State, inst: Optional[Instantiation] = None) -> bool:
    """Guard holds and the move changes the (non-history) state."""
    if not eval_expr(m, r.guard, s, inst):
        return False
    hist = m.history
    for v, e in r.updates:
        if v not in hist and eval_expr(m, e, s, inst) != state_get(s, v):
            return True
    return False


def successors(m: TemplateModel, inst: Optional[Instantiation], s: State) -> set[State]:
    return {
        apply_rule(m, r, s, inst)
        for r in m.rules
        if rule_enabled(m, r, s, inst)
    }


def enabled_count(m: TemplateModel, inst: Optional[Instantiation], s: State) -> int:
    return sum(1 for r in m.rules if rule_enabled(m, r, s, inst))


def legitimate(m: TemplateModel, inst: Optional[Instantiation], s: State) -> bool:
    """Exactly one rule, across all machines, is enabled.

    Rules count as distinct syntactic entries: two machines carrying the
    same rule text contribute separately.
    """
    count = 0
    for r in m.rules:
        if rule_enabled(m, r, s, inst):
            count += 1
            if count > 1:
                return False
    return count == 1


def moved_predicate(m: TemplateModel) -> Expr:
    """Conjunction of the per-machine history bits added by augment_moved."""
    if not m.history:
        raise ModelError("model has no history bits; call augment_moved first")
    return conj([Var(v) for v in sorted(m.history)])


# ---------------------------------------------------------------------------
# Template-level operations
# ---------------------------------------------------------------------------

def check_total(m: TemplateModel, inst: Instantiation) -> None:
    if len(inst) != len(m.params):
        raise PartialInstantiation(
            f"instantiation covers {len(inst)} of {len(m.params)} holes"
        )
    for p, idx in zip(m.params, inst):
        if not 0 <= idx < len(p.domain):
            raise PartialInstantiation(
                f"hole {p.name!r}: menu index {idx} out of range"
            )


def substitute(m: TemplateModel, e: Expr, inst: Instantiation) -> Expr:
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Not):
        return Not(substitute(m, e.arg, inst))
    if isinstance(e, And):
        return And(tuple(substitute(m, a, inst) for a in e.args))
    if isinstance(e, Or):
        return Or(tuple(substitute(m, a, inst) for a in e.args))
    if isinstance(e, Eq):
        return Eq(substitute(m, e.lhs, inst), substitute(m, e.rhs, inst))
    if isinstance(e, Choice):
        return m.menu_entry(e.param, inst[e.param], e.rot)
    raise ModelError(f"unknown expression node {e!r}")


def instantiate(m: TemplateModel, inst: Instantiation) -> TemplateModel:
    """Resolve every hole; the result is a concrete protocol (no params)."""
    check_total(m, inst)
    if not m.params:
        return m
    rules = tuple(
        Rule(
            name=r.name,
            owner=r.owner,
            guard=substitute(m, r.guard, inst),
            updates=tuple((v, substitute(m, e, inst)) for v, e in r.updates),
        )
        for r in m.rules
    )
    return replace(m, params=(), rules=rules)


def augment_moved(m: TemplateModel) -> TemplateModel:
    """Add a per-machine "has moved" history bit.

    Each machine's rules additionally set its bit; all bits start false.
    History bits are excluded from the move-changes-state test so the
    enabledness of the original rules is unchanged.
    """
    if m.history:
        raise ModelError("model already carries history bits")
    nvars = len(m.vars)
    moved = tuple(
        VarDecl(name=f"moved[{i}]", machine=i, array="moved", pos=i)
        for i in range(m.nmachines)
    )
    handles = tuple(range(nvars, nvars + m.nmachines))
    init = conj([m.init] + [Not(Var(h)) for h in handles])
    rules = tuple(
        Rule(
            name=r.name,
            owner=r.owner,
            guard=r.guard,
            updates=tuple(sorted(r.updates + ((handles[r.owner], TRUE),))),
        )
        for r in m.rules
    )
    owned = tuple(m.owned[i] | {handles[i]} for i in range(m.nmachines))
    readable = tuple(m.readable[i] | {handles[i]} for i in range(m.nmachines))
    return replace(
        m,
        vars=m.vars + moved,
        rules=rules,
        init=init,
        owned=owned,
        readable=readable,
        history=frozenset(handles),
    )


def enumerate_instantiations(m: TemplateModel) -> Iterator[Instantiation]:
    """Lexicographic product over menu sizes; one empty tuple if no holes."""
    return itertools.product(*(range(len(p.domain)) for p in m.params))


def instantiation_count(m: TemplateModel) -> int:
    n = 1
    for p in m.params:
        n *= len(p.domain)
    return n
