"""Lazily computed invariants of one (group, orientation, field) context,
shared by the checks so each series is computed once."""
from __future__ import annotations

import json
from functools import cached_property
from importlib import resources

import numpy as np

from .algebra import AlgebraContext
from .fields import get_field
from .groups import (
    DecompositionError,
    decompose_q8_structure,
    FiniteGroup,
    GroupError,
    Orientation,
    derived_subgroup,
    induced_group,
    is_cyclic,
    prime_factors,
    sylow_subgroup,
)
from .lie import DEFAULT_SERIES_CAP, lower_lie_series, strong_lie_series, t_nil
from .linalg import Subspace
from .units import p_filtration, witness_class_bounds


def load_fixtures() -> dict:
    text = resources.files("involution_lab").joinpath("data/fixtures.json").read_text()
    return json.loads(text)


class Analysis:
    """One context FG with its series, decomposition and P-filtration."""

    def __init__(self, group: FiniteGroup, orientation: Orientation, characteristic: int,
                 name: str = "", series_cap: int = DEFAULT_SERIES_CAP, seed: int = 0):
        self.group = group
        self.orientation = orientation
        self.p = characteristic
        self.name = name or f"order-{group.order}"
        self.series_cap = series_cap
        self.seed = seed

    @cached_property
    def ctx(self) -> AlgebraContext:
        return AlgebraContext(self.group, get_field(self.p), self.orientation)

    @cached_property
    def sym(self) -> np.ndarray:
        return self.ctx.symmetric_generators().plus_part

    @cached_property
    def decomposition_result(self):
        try:
            return decompose_q8_structure(self.group, self.orientation, self.p), None
        except DecompositionError as exc:
            return None, str(exc)

    @property
    def decomposition(self):
        return self.decomposition_result[0]

    @property
    def decomposition_error(self) -> str | None:
        return self.decomposition_result[1]

    @cached_property
    def lower(self):
        return lower_lie_series(self.ctx, self.sym, self.series_cap)

    @cached_property
    def strong(self):
        return strong_lie_series(self.ctx, self.sym, self.series_cap)

    @cached_property
    def strong_set(self):
        return strong_lie_series(self.ctx, self.sym, self.series_cap, first="set")

    @cached_property
    def whole_strong(self):
        """Strong chain of the whole algebra (S = FG)."""
        return strong_lie_series(self.ctx, self.ctx.field.eye(self.ctx.n), self.series_cap)

    @cached_property
    def whole_lower(self):
        return lower_lie_series(self.ctx, self.ctx.field.eye(self.ctx.n), self.series_cap)

    @cached_property
    def derived(self) -> tuple:
        return derived_subgroup(self.group)

    @property
    def derived_order(self) -> int:
        return len(self.derived)

    @cached_property
    def derived_cyclic(self) -> bool:
        return is_cyclic(self.group, self.derived)

    @cached_property
    def p_part(self) -> tuple:
        """P from the decomposition, else a Sylow p-subgroup (trivial in characteristic 0)."""
        if self.decomposition is not None:
            return tuple(self.decomposition.p_part)
        if self.p == 0 or self.p not in prime_factors(self.group.order):
            return (0,)
        return tuple(sylow_subgroup(self.group, self.p))

    @cached_property
    def p_group(self) -> FiniteGroup:
        return induced_group(self.group, self.p_part)[0]

    @cached_property
    def t_nil(self) -> int | None:
        if self.p == 0:
            return None if len(self.p_part) > 1 else 1
        return t_nil(self.p_group, self.p)

    @cached_property
    def filtration(self):
        if self.decomposition is None:
            raise GroupError("the P-filtration needs the structural decomposition")
        return p_filtration(self.ctx, self.decomposition)

    def filtration_term(self, k: int):
        """FG Delta(P)^k (zero past the nilpotency index, whole algebra for k <= 0)."""
        if k <= 0:
            return Subspace.full(self.ctx.field, self.ctx.n)
        if k > len(self.filtration):
            return Subspace.zero(self.ctx.field, self.ctx.n)
        return self.filtration[k - 1]

    @cached_property
    def unit_bounds(self):
        return witness_class_bounds(self.ctx, self.decomposition, seed=self.seed, cap=self.series_cap,
                                    strong=self.strong, strong_set=self.strong_set)
