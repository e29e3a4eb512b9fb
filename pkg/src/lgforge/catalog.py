"""Machine-readable catalog of LG models with declarative checks.

Entries live in a versioned JSON file (see ``data/catalog.json``); the
harness here parses them, runs every declared check and reports pass/fail
with witnesses.  The catalog is data, not code: errata are fixed by
editing the file.

Schema (one entry)::

    {"id": str, "dim": int, "picard_rank": int,
     "model": str | null,            # primary polynomial, if the source states one
     "params": [str, ...],           # parameter names for param_model
     "param_model": str | null,      # parametrized polynomial, optional
     "modulo_constant": bool,        # compare periods up to constant shift
     "geometric_only": bool,         # no numeric content; parse-only entry
     "checks": [ ... ]}

Check kinds: ``exact_equal``, ``period_match``, ``mutation_chain``,
``parameter_limit_edge``, ``direction_degeneration_edge``, ``toric_oracle``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import degeneration, mutation, period, toric
from .laurent import LaurentError, LaurentPolynomial
from .parsing import parse

DEFAULT_ORDER = 10

_CHECK_KINDS = (
    "exact_equal",
    "period_match",
    "mutation_chain",
    "parameter_limit_edge",
    "direction_degeneration_edge",
    "toric_oracle",
)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in _CHECK_KINDS:
            raise CatalogError(f"unknown check kind {self.kind!r}")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dim: int
    picard_rank: int
    model: str | None
    params: tuple[str, ...]
    param_model: str | None
    modulo_constant: bool
    geometric_only: bool
    checks: tuple[Check, ...]
    notes: str = ""

    @property
    def rank(self) -> int:
        return self.dim

    @property
    def param_rank(self) -> int:
        return len(self.params)

    def parse_model(self) -> LaurentPolynomial | None:
        if self.model is None:
            return None
        return parse(self.model, self.rank, self.param_rank)

    def parse_param_model(self) -> LaurentPolynomial | None:
        if self.param_model is None:
            return None
        return parse(self.param_model, self.rank, self.param_rank)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "dim": self.dim,
            "picard_rank": self.picard_rank,
            "model": self.model,
            "params": list(self.params),
            "param_model": self.param_model,
            "modulo_constant": self.modulo_constant,
            "geometric_only": self.geometric_only,
            "checks": [{"kind": c.kind, **c.payload} for c in self.checks],
            "notes": self.notes,
        }


@dataclass
class CheckReport:
    kind: str
    ok: bool
    detail: str = ""
    witness_degree: int | None = None


@dataclass
class EntryReport:
    entry_id: str
    ok: bool
    checks: list[CheckReport] = field(default_factory=list)
    seconds: float = 0.0
    error: str = ""


def _entry_from_json(raw: dict) -> CatalogEntry:
    try:
        checks = []
        for c in raw.get("checks", ()):
            payload = {k: v for k, v in c.items() if k != "kind"}
            checks.append(Check(kind=c["kind"], payload=payload))
        entry = CatalogEntry(
            id=raw["id"],
            dim=int(raw["dim"]),
            picard_rank=int(raw["picard_rank"]),
            model=raw.get("model"),
            params=tuple(raw.get("params", ())),
            param_model=raw.get("param_model"),
            modulo_constant=bool(raw.get("modulo_constant", False)),
            geometric_only=bool(raw.get("geometric_only", False)),
            checks=tuple(checks),
            notes=raw.get("notes", ""),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise CatalogError(f"entry {raw.get('id', '?')!r}: {err}") from err
    # the declared polynomials must parse at the declared ranks
    for label, text in (("model", entry.model), ("param_model", entry.param_model)):
        if text is not None:
            try:
                parse(text, entry.rank, entry.param_rank)
            except LaurentError as err:
                raise CatalogError(f"entry {entry.id!r}: {label} does not parse: {err}") from err
    return entry


def default_catalog_path() -> Path:
    return Path(str(resources.files("lgforge").joinpath("data/catalog.json")))


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Load and validate entries, sorted by id."""
    if path is None:
        path = default_catalog_path()
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise CatalogError("catalog file must contain a JSON list of entries")
    entries = [_entry_from_json(item) for item in raw]
    ids = [e.id for e in entries]
    if len(ids) != len(set(ids)):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise CatalogError(f"duplicate entry ids: {dupes}")
    return sorted(entries, key=lambda e: e.id)


class _Resolver:
    """Expression lookup shared by the check runners."""

    def __init__(self, entries: list[CatalogEntry]):
        self.by_id = {e.id: e for e in entries}

    def model_of(self, entry_id: str) -> LaurentPolynomial:
        entry = self.by_id.get(entry_id)
        if entry is None:
            raise CatalogError(f"unknown target entry {entry_id!r}")
        model = entry.parse_model()
        if model is None:
            raise CatalogError(f"entry {entry_id!r} has no model polynomial")
        if entry.param_rank and model.param_rank:
            ones = {i: Fraction(1) for i in range(model.param_rank)}
            model = model.substitute_parameters(ones)
        return model

    def expr(self, entry: CatalogEntry, spec, rank=None) -> LaurentPolynomial:
        """An expression spec: a string, or {"param_model_at": {...}}."""
        rank = entry.rank if rank is None else rank
        if isinstance(spec, str):
            return _drop_unused_params(parse(spec, rank, entry.param_rank))
        if isinstance(spec, dict) and "param_model_at" in spec:
            f = entry.parse_param_model()
            if f is None:
                raise CatalogError(f"entry {entry.id!r} has no param_model")
            assign = {
                _param_index(entry, name): Fraction(value)
                for name, value in spec["param_model_at"].items()
            }
            return f.substitute_parameters(assign)
        raise CatalogError(f"bad expression spec {spec!r}")


def _param_index(entry: CatalogEntry, name: str) -> int:
    try:
        return entry.params.index(name)
    except ValueError:
        raise CatalogError(f"entry {entry.id!r} has no parameter {name!r}") from None


def _strip_params(f: LaurentPolynomial) -> LaurentPolynomial:
    if f.param_rank:
        return f.substitute_parameters({i: Fraction(1) for i in range(f.param_rank)})
    return f


def _drop_unused_params(f: LaurentPolynomial) -> LaurentPolynomial:
    """Canonicalize a polynomial that declares parameters but uses none."""
    from .laurent import ParamPoly

    if f.param_rank and not any(isinstance(c, ParamPoly) for c in f.terms.values()):
        return LaurentPolynomial(f.rank, 0, dict(f.terms))
    return f


def _run_exact_equal(entry, check, resolver, order) -> CheckReport:
    left = resolver.expr(entry, check.payload["left"])
    right = resolver.expr(entry, check.payload["right"])
    modulo = check.payload.get("modulo_constant", False)
    if modulo:
        left = left - LaurentPolynomial.constant(left.constant_term(), left.rank, left.param_rank)
        right = right - LaurentPolynomial.constant(right.constant_term(), right.rank, right.param_rank)
    ok = left == right
    detail = "" if ok else f"difference {(left - right).render()}"
    return CheckReport("exact_equal", ok, detail)


def _run_period_match(entry, check, resolver, order) -> CheckReport:
    n = int(check.payload.get("order", order))
    source_spec = check.payload.get("source")
    source = (
        resolver.expr(entry, source_spec)
        if source_spec is not None
        else entry.parse_model()
    )
    source = _strip_params(source)
    if "target_id" in check.payload:
        target = resolver.model_of(check.payload["target_id"])
        label = check.payload["target_id"]
    else:
        target = _strip_params(resolver.expr(entry, check.payload["target"]))
        label = "expression"
    modulo = check.payload.get("modulo_constant", entry.modulo_constant)
    shift = period.period_equal_up_to_shift(source, target, n, fast=True)
    if shift is None:
        witness = period.first_period_mismatch(source, target, n, fast=True)
        degree = witness[0] if witness else None
        return CheckReport(
            "period_match",
            False,
            f"period differs from {label}"
            + (f" first at degree {degree} ({witness[1]} vs {witness[2]})" if witness else ""),
            witness_degree=degree,
        )
    if shift != 0 and not modulo:
        return CheckReport(
            "period_match",
            False,
            f"periods agree only up to nonzero shift {shift}",
            witness_degree=0,
        )
    return CheckReport("period_match", True, f"matches {label} (shift {shift}) to order {n}")


def _chain_steps_from_json(entry, steps_json, resolver):
    steps = []
    for raw in steps_json:
        kind = raw["kind"]
        if kind == "mutation":
            factor = _drop_unused_params(parse(raw["a"], entry.rank, entry.param_rank))
            steps.append(
                mutation.MutationStep(mutation.MutationData(tuple(raw["w"]), factor))
            )
        elif kind == "coords":
            steps.append(mutation.CoordStep(tuple(tuple(row) for row in raw["matrix"])))
        elif kind == "subst":
            assign = tuple(
                (_param_index(entry, name), Fraction(value))
                for name, value in raw["assign"].items()
            )
            steps.append(mutation.SubstStep(assign))
        else:
            raise CatalogError(f"unknown chain step kind {kind!r}")
    return steps


def _run_mutation_chain(entry, check, resolver, order) -> CheckReport:
    n = int(check.payload.get("order", order))
    start = resolver.expr(entry, check.payload["start"])
    steps = _chain_steps_from_json(entry, check.payload["steps"], resolver)
    expected = resolver.expr(entry, check.payload["expected"])
    modulo = check.payload.get("modulo_constant", entry.modulo_constant)
    chain = mutation.MutationChain(start, tuple(steps))
    report = mutation.verify_chain(chain, expected, order=n, modulo_constant=modulo)
    if report.ok:
        return CheckReport("mutation_chain", True, report.detail)
    failed = [s for s in report.steps if not s.ok]
    detail = report.detail or (failed[0].description + ": " + failed[0].detail if failed else "")
    return CheckReport("mutation_chain", False, detail)


def _run_parameter_limit_edge(entry, check, resolver, order) -> CheckReport:
    f = entry.parse_param_model()
    if f is None:
        raise CatalogError(f"entry {entry.id!r} has no param_model")
    payload = check.payload
    if "direction" in payload:
        direction = [Fraction(x) for x in payload["direction"]]
        f = degeneration.parameter_direction_limit(f, direction)
    if payload.get("dying"):
        dying = [_param_index(entry, name) for name in payload["dying"]]
        f = degeneration.parameter_limit(f, dying)
    if f.param_rank:
        # remaining parameters keep their relative order; default assignment 1
        subst = payload.get("subst", {})
        survivors = [n for n in entry.params if n not in payload.get("dying", ())]
        values = {
            idx: Fraction(subst.get(name, 1))
            for idx, name in enumerate(survivors[: f.param_rank])
        }
        f = f.substitute_parameters(values)
    if "fibre_weight" in payload:
        w = tuple(int(x) for x in payload["fibre_weight"])
        pieces = f.graded_pieces(w)
        f = pieces.get(0, LaurentPolynomial.zero(f.rank, f.param_rank))
        axes = [i for i, x in enumerate(w) if x != 0]
        if len(axes) == 1 and abs(w[axes[0]]) == 1:
            f = f.drop_coordinate(axes[0])
    if "expect_id" in payload:
        expected = resolver.model_of(payload["expect_id"])
    else:
        expected = resolver.expr(entry, payload["expect"], rank=f.rank)
    expected = _strip_params(expected)
    ok = f == expected
    return CheckReport(
        "parameter_limit_edge",
        ok,
        "" if ok else f"limit gives {f.render()}, expected {expected.render()}",
    )


def _run_direction_degeneration_edge(entry, check, resolver, order) -> CheckReport:
    fan = toric.FanData(
        rank=len(check.payload["rays"][0]),
        rays=tuple(tuple(r) for r in check.payload["rays"]),
    )
    d = [Fraction(x) for x in check.payload["d"]]
    result = degeneration.direction_degeneration(degeneration.DivisorOnFan(fan, tuple(d)))
    got_min = set(result.min_rays(fan))
    got_max = set(result.max_rays(fan))
    want_min = {tuple(r) for r in check.payload["min_support"]}
    want_max = {tuple(r) for r in check.payload["max_support"]}
    ok = got_min == want_min and got_max == want_max
    detail = "" if ok else f"min {sorted(got_min)} vs {sorted(want_min)}; max {sorted(got_max)} vs {sorted(want_max)}"
    return CheckReport("direction_degeneration_edge", ok, detail)


def _run_toric_oracle(entry, check, resolver, order) -> CheckReport:
    fan = toric.FanData(
        rank=len(check.payload["rays"][0]),
        rays=tuple(tuple(r) for r in check.payload["rays"]),
    )
    n = int(check.payload.get("order", 8))
    cg = toric.class_group(fan)
    model = toric.toric_pair_model(fan, cg)
    direct = period.period_coefficients(model, n, period.REGULARIZED)
    combinatorial = toric.toric_quantum_period(fan, cg, n)
    if direct.coefficients != combinatorial.coefficients:
        mismatch = next(
            d
            for d in range(n + 1)
            if direct.coefficients[d] != combinatorial.coefficients[d]
        )
        return CheckReport(
            "toric_oracle",
            False,
            f"powering and monoid oracle disagree at degree {mismatch}",
            witness_degree=mismatch,
        )
    detail = f"oracle agreement to order {n}"
    if check.payload.get("match_model", False):
        ones = {i: Fraction(1) for i in range(model.param_rank)}
        specialized = model.substitute_parameters(ones)
        target = _strip_params(entry.parse_model())
        if specialized != target:
            return CheckReport(
                "toric_oracle",
                False,
                f"ray-sum model {specialized.render()} differs from entry model",
            )
        detail += "; specializes to the entry model"
    return CheckReport("toric_oracle", True, detail)


_RUNNERS = {
    "exact_equal": _run_exact_equal,
    "period_match": _run_period_match,
    "mutation_chain": _run_mutation_chain,
    "parameter_limit_edge": _run_parameter_limit_edge,
    "direction_degeneration_edge": _run_direction_degeneration_edge,
    "toric_oracle": _run_toric_oracle,
}


def verify_entry(
    entry: CatalogEntry,
    order: int = DEFAULT_ORDER,
    entries: list[CatalogEntry] | None = None,
) -> EntryReport:
    """Run every declared check of one entry; failures become report lines."""
    resolver = _Resolver(entries if entries is not None else [entry])
    start = time.perf_counter()
    report = EntryReport(entry_id=entry.id, ok=True)
    for check in entry.checks:
        try:
            result = _RUNNERS[check.kind](entry, check, resolver, order)
        except (LaurentError, CatalogError, toric.ToricError) as err:
            result = CheckReport(check.kind, False, f"error: {err}")
        report.checks.append(result)
        if not result.ok:
            report.ok = False
    report.seconds = time.perf_counter() - start
    return report


def _verify_one(args):
    path, entry_id, order = args
    entries = _load_cached(path)
    by_id = {e.id: e for e in entries}
    return verify_entry(by_id[entry_id], order, entries)


_CACHE: dict[str, list[CatalogEntry]] = {}


def _load_cached(path: str) -> list[CatalogEntry]:
    if path not in _CACHE:
        _CACHE[path] = load_catalog(path)
    return _CACHE[path]


def verify_all(
    order: int = DEFAULT_ORDER,
    path: str | Path | None = None,
    id_filter: str | None = None,
    workers: int = 1,
) -> list[EntryReport]:
    """Verify every (filtered) entry; reports are ordered by id."""
    import fnmatch

    if path is None:
        path = default_catalog_path()
    path = str(path)
    entries = _load_cached(path)
    selected = [
        e
        for e in entries
        if id_filter is None
        or fnmatch.fnmatch(e.id, id_filter)
        or e.id.startswith(id_filter)
    ]
    if workers > 1 and len(selected) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(
                pool.map(_verify_one, [(path, e.id, order) for e in selected])
            )
    else:
        reports = [verify_entry(e, order, entries) for e in selected]
    return sorted(reports, key=lambda r: r.entry_id)
