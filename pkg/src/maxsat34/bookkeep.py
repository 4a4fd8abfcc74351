"""Incremental partial-assignment state.

Tracks the satisfied weight, the unsatisfied weight, and the doubled
midpoint bound 2*B_i = SAT_i + (W - UNSAT_i) along a sequential assignment.
Everything is kept doubled so all quantities stay exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .formula import Formula


class OrderError(ValueError):
    """The given assignment order is not a permutation of 1..n."""


class LemmaViolation(RuntimeError):
    """An invariant proven by the analysis failed; signals a bookkeeping
    or solver bug, never a property of the input."""


@dataclass(frozen=True)
class StepQuantities:
    """Exact decision data for the next variable in the order.

    t2/f2 are the doubled bound changes 2*t_i and 2*f_i.  sat_t, unsat_t
    (resp. _f) are the absolute SAT/UNSAT totals after setting the variable
    true (resp. false).  vz_w, vz_wbar, vz_f, vz_fbar are the weights
    W_i, Wbar_i, F_i, Fbar_i used by the alpha decision rule.
    """

    var: int
    t2: int
    f2: int
    sat_t: int
    sat_f: int
    unsat_t: int
    unsat_f: int
    vz_w: int
    vz_wbar: int
    vz_f: int
    vz_fbar: int


def check_order(n: int, order: Optional[Sequence[int]]) -> tuple[int, ...]:
    if order is None:
        return tuple(range(1, n + 1))
    order = tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise OrderError(f"order is not a permutation of 1..{n}")
    return order


class TraceState:
    """Mutable state of one sequential run over an immutable Formula."""

    __slots__ = (
        "formula",
        "order",
        "prefix",
        "values",
        "sat_weight",
        "unsat_weight",
        "_clause_sat",
        "_clause_open",
        "_occ",
    )

    def __init__(self, formula: Formula, order: Optional[Sequence[int]] = None):
        self.formula = formula
        self.order = check_order(formula.num_vars, order)
        self.prefix = 0
        self.values: list[Optional[bool]] = [None] * formula.num_vars
        self.sat_weight = 0
        self.unsat_weight = 0
        self._clause_sat = [False] * formula.num_clauses
        self._clause_open = [len(c.variables()) for c in formula.clauses]
        occ: list[list[int]] = [[] for _ in range(formula.num_vars + 1)]
        for j, c in enumerate(formula.clauses):
            for v in c.variables():
                occ[v].append(j)
        self._occ = occ

    @property
    def doubled_bound(self) -> int:
        """2*B_i = SAT_i + (W - UNSAT_i)."""
        return self.sat_weight + self.formula.total_weight - self.unsat_weight

    def copy(self) -> "TraceState":
        other = TraceState.__new__(TraceState)
        other.formula = self.formula
        other.order = self.order
        other.prefix = self.prefix
        other.values = list(self.values)
        other.sat_weight = self.sat_weight
        other.unsat_weight = self.unsat_weight
        other._clause_sat = list(self._clause_sat)
        other._clause_open = list(self._clause_open)
        other._occ = self._occ  # occurrence lists are read-only
        return other

    def next_var(self) -> int:
        if self.prefix >= self.formula.num_vars:
            raise IndexError("all variables are already assigned")
        return self.order[self.prefix]


def new_trace(formula: Formula, order: Optional[Sequence[int]] = None) -> TraceState:
    return TraceState(formula, order)


def step_quantities(state: TraceState) -> StepQuantities:
    """Decision quantities for the next unassigned variable.

    A clause counts toward unsat_t exactly when it is not yet satisfied,
    the variable is its last unassigned one, and setting it true does not
    satisfy it.  Raises LemmaViolation if t2 + f2 < 0, which the analysis
    proves impossible.
    """
    v = state.next_var()
    clauses = state.formula.clauses
    sat_gain_t = sat_gain_f = 0
    unsat_gain_t = unsat_gain_f = 0
    vz_w = vz_wbar = vz_f = vz_fbar = 0
    for j in state._occ[v]:
        if state._clause_sat[j]:
            continue
        c = clauses[j]
        w = c.weight
        in_pos = v in c.pos
        in_neg = v in c.neg
        last = state._clause_open[j] == 1
        if in_pos and in_neg:
            # tautological in v: satisfied either way
            sat_gain_t += w
            sat_gain_f += w
        elif in_pos:
            sat_gain_t += w
            if last:
                unsat_gain_f += w
                vz_w += w
            else:
                vz_f += w
        else:
            sat_gain_f += w
            if last:
                unsat_gain_t += w
                vz_wbar += w
            else:
                vz_fbar += w
    t2 = sat_gain_t - unsat_gain_t
    f2 = sat_gain_f - unsat_gain_f
    if t2 + f2 < 0:
        raise LemmaViolation(
            f"Lemma 1 violated at x{v}: t2 + f2 = {t2 + f2} < 0"
        )
    return StepQuantities(
        var=v,
        t2=t2,
        f2=f2,
        sat_t=state.sat_weight + sat_gain_t,
        sat_f=state.sat_weight + sat_gain_f,
        unsat_t=state.unsat_weight + unsat_gain_t,
        unsat_f=state.unsat_weight + unsat_gain_f,
        vz_w=vz_w,
        vz_wbar=vz_wbar,
        vz_f=vz_f,
        vz_fbar=vz_fbar,
    )


def apply(state: TraceState, value: bool) -> TraceState:
    """Assign the next variable in order; updates state in place."""
    v = state.next_var()
    clauses = state.formula.clauses
    state.values[v - 1] = value
    for j in state._occ[v]:
        state._clause_open[j] -= 1
        if state._clause_sat[j]:
            continue
        c = clauses[j]
        if (value and v in c.pos) or (not value and v in c.neg):
            state._clause_sat[j] = True
            state.sat_weight += c.weight
        elif state._clause_open[j] == 0:
            state.unsat_weight += c.weight
    state.prefix += 1
    return state


def vz_quantities(
    q: StepQuantities,
) -> tuple[int, int, int, int, Optional[Fraction]]:
    """(W_i, Wbar_i, F_i, Fbar_i, alpha).

    alpha = (W_i + F_i - Wbar_i) / (F_i + Fbar_i) as an exact Fraction.
    A zero denominator (every touched clause is decided either way by this
    variable) is reported as alpha=None; callers resolve it from the signs
    of t2/f2: t2 <= 0 acts as alpha <= 0, f2 <= 0 as alpha >= 1.
    """
    den = q.vz_f + q.vz_fbar
    if den == 0:
        return q.vz_w, q.vz_wbar, q.vz_f, q.vz_fbar, None
    alpha = Fraction(q.vz_w + q.vz_f - q.vz_wbar, den)
    return q.vz_w, q.vz_wbar, q.vz_f, q.vz_fbar, alpha


def recompute_sat_unsat(
    formula: Formula, values: Sequence[Optional[bool]]
) -> tuple[int, int]:
    """Full-rescan reference for (SAT_i, UNSAT_i); cross-checks the
    incremental bookkeeping."""
    sat = unsat = 0
    for c in formula.clauses:
        satisfied = any(values[v - 1] is True for v in c.pos) or any(
            values[v - 1] is False for v in c.neg
        )
        if satisfied:
            sat += c.weight
        elif all(values[v - 1] is not None for v in c.variables()):
            unsat += c.weight
    return sat, unsat
