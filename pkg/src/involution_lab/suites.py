"""Suites bundle checks for one (group, orientation, field) context and turn
them into an ordered, deterministic report."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import checks as C
from .analysis import Analysis, load_fixtures
from .fields import _is_prime
from .groups import GroupError, OrderCapExceeded, make_orientation
from .lie import DEFAULT_SERIES_CAP, STABILIZED, VANISHED
from .specs import default_order_cap, parse_kernel, resolve_group
from .units import DEFAULT_ENUM_CAP, CapExceeded

SUITES = {
    "involution-axioms": [C.involution_axioms],
    "span-equalities": [C.span_equalities],
    "thm-q8-strong": [C.strong_nilpotence],
    "thm-index-cyclic": [C.derived_index],
    "bounds-q8": [C.index_bounds, C.lower_series_spanning_sets],
    "lemma-suite": [
        C.power_congruence,
        C.chain_reduction,
        C.filtration_containments,
        C.norm_element_depth,
        C.powerful_commutation,
        C.sym_action_membership,
        C.sym_action_congruence,
        C.bracket_identities,
        C.monotonicity,
    ],
    "unit-class": [C.unit_class],
}

# checks that take the fixture table as a second argument
_WITH_FIXTURES = {C.span_equalities, C.strong_nilpotence, C.derived_index, C.index_bounds, C.unit_class}


class ConfigError(ValueError):
    """Invalid suite configuration (usage error)."""


@dataclass
class SuiteConfig:
    suite: str
    group: str
    kernel: str | None = None
    characteristic: int | None = None
    cap_order: int | None = None
    cap_series: int = DEFAULT_SERIES_CAP
    cap_enum: int = DEFAULT_ENUM_CAP
    seed: int = 0

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        p = self.characteristic
        if p is not None and p != 0 and (p == 2 or not _is_prime(p)):
            raise ConfigError(f"characteristic must be 0 or an odd prime, got {p}")
        if self.cap_series < 2:
            raise ConfigError("series cap must be at least 2")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "kernel": self.kernel,
            "characteristic": self.characteristic,
            "cap_order": self.cap_order,
            "cap_series": self.cap_series,
            "cap_enum": self.cap_enum,
            "seed": self.seed,
        }


@dataclass
class CaseResult:
    case_id: str
    statement: str
    expected: object
    source: str
    computed: object
    status: str
    detail: str = ""
    runtime: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "case": self.case_id,
            "statement": self.statement,
            "expected": jsonable(self.expected),
            "source": self.source,
            "computed": jsonable(self.computed),
            "status": self.status,
            "detail": self.detail,
        }
        if timings:
            out["runtime"] = round(self.runtime, 3)
        return out


@dataclass
class Report:
    config: SuiteConfig
    summary: dict
    cases: list[CaseResult] = field(default_factory=list)
    allow_inconclusive: bool = False

    def counts(self) -> dict:
        out = {s: 0 for s in (C.PASS, C.FAIL, C.INCONCLUSIVE, C.SKIPPED)}
        for case in self.cases:
            out[case.status] += 1
        return out

    @property
    def status(self) -> str:
        n = self.counts()
        if n[C.FAIL]:
            return C.FAIL
        if n[C.INCONCLUSIVE] and not self.allow_inconclusive:
            return C.INCONCLUSIVE
        return C.PASS

    @property
    def exit_code(self) -> int:
        return {C.PASS: 0, C.FAIL: 1, C.INCONCLUSIVE: 2}[self.status]

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if c.status == C.FAIL]

    def case(self, name: str) -> CaseResult:
        for c in self.cases:
            if c.case_id.split("/", 1)[-1] == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "config": self.config.to_dict(),
            "summary": self.summary,
            "status": self.status,
            "counts": self.counts(),
            "cases": [c.to_dict(timings) for c in self.cases],
        }


def jsonable(value):
    """Plain JSON types for check payloads (tuples become lists, numpy scalars ints)."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return round(value, 12)
    return str(value)


def build_analysis(config: SuiteConfig) -> Analysis:
    """Resolve the group, orientation and field of a config."""
    config.validate()
    cap = config.cap_order if config.cap_order is not None else default_order_cap()
    try:
        G, entry = resolve_group(config.group, cap=cap)
    except OrderCapExceeded:
        raise
    except GroupError as exc:
        raise ConfigError(str(exc)) from exc
    kernel = config.kernel if config.kernel is not None else (entry.kernel if entry else None)
    p = config.characteristic
    if p is None:
        p = entry.characteristic if entry else 3
    try:
        sigma = make_orientation(G, parse_kernel(G, kernel))
    except (GroupError, KeyError) as exc:
        raise ConfigError(f"bad kernel {kernel!r}: {exc}") from exc
    name = config.group
    if entry is not None:
        # fixtures are keyed by catalog name, so overrides get their own name
        name = entry.name
        if kernel != entry.kernel:
            name += f"[N=<{kernel or 'G'}>]"
        if p != entry.characteristic:
            name += f"@char{p}"
    an = Analysis(G, sigma, p, name=name, series_cap=config.cap_series, seed=config.seed)
    an.enum_cap = config.cap_enum
    return an


def _lie_verdict(an: Analysis) -> str:
    v = an.lower.verdict
    if v == VANISHED:
        return "Lie nilpotent"
    if v == STABILIZED:
        return "not Lie nilpotent"
    return "undecided (series cap)"


def summarize(an: Analysis) -> dict:
    """One row of invariants; cl only when a suite already resolved it."""
    lower, strong = an.lower, an.strong
    cl = None
    if "unit_bounds" in an.__dict__:
        cl = an.unit_bounds.value
    return {
        "group": an.name,
        "order": an.group.order,
        "p": an.p,
        "kernel_order": len(an.orientation.kernel),
        "derived_order": an.derived_order,
        "t": lower.index,
        "tL": strong.index,
        "t_nil": an.t_nil,
        "cl": cl,
        "verdict": _lie_verdict(an),
        "lower_dims": list(lower.dims),
        "strong_dims": list(strong.dims),
    }


def run_checks(an: Analysis, suite: str, fixtures: dict | None = None) -> list[CaseResult]:
    fixtures = load_fixtures() if fixtures is None else fixtures
    out = []
    for fn in SUITES[suite]:
        start = time.perf_counter()
        try:
            found = fn(an, fixtures) if fn in _WITH_FIXTURES else fn(an)
        except CapExceeded as exc:
            found = [C.Check(fn.__name__.replace("_", "-"), fn.__doc__.splitlines()[0] if fn.__doc__ else "",
                             None, None, C.INCONCLUSIVE, C.FROM_DEFINITION, f"cap exceeded: {exc}")]
        elapsed = time.perf_counter() - start
        for chk in found:
            out.append(CaseResult(f"{an.name}/{chk.name}", chk.statement, chk.expected, chk.source,
                                  chk.computed, chk.status, chk.detail, elapsed / max(len(found), 1)))
    return out


def run_suite(config: SuiteConfig, allow_inconclusive: bool = False, fixtures: dict | None = None,
              analysis: Analysis | None = None) -> Report:
    """Run one suite on one context. Cases are ordered as the checks list them."""
    try:
        an = analysis if analysis is not None else build_analysis(config)
    except OrderCapExceeded as exc:
        case = CaseResult(f"{config.group}/order-cap", "group order within the cap", None, C.FROM_DEFINITION,
                          None, C.INCONCLUSIVE, str(exc))
        return Report(config, {"group": config.group}, [case], allow_inconclusive)
    cases = run_checks(an, config.suite, fixtures)
    return Report(config, summarize(an), cases, allow_inconclusive)
