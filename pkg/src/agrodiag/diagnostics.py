"""Declarative binding-constraint decision trees over named indicators.

A tree is a forest of question chains, shipped as editable JSON data with
three top-level keys: ``roots`` (ids evaluated in order), ``nodes`` (id to
node) and ``manifest`` (indicator names the predicates may reference, with
optional unit tags). Each node asks one question about one scalar
indicator; its branches either continue to another node or settle the
chain's constraint as binding or not binding.

Evaluation is pure: the same tree and indicator set always produce the
same report, byte for byte once serialized.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from numbers import Real
from typing import Any, Mapping

from .errors import (
    CycleError,
    DanglingReferenceError,
    DuplicateKeyError,
    EvaluationError,
    IndicatorTypeError,
    ManifestError,
    TreeConfigError,
)

COMPARATORS = ("<", "<=", ">", ">=", "=", "trend_up", "trend_down", "stable")
_THRESHOLD_COMPARATORS = ("<", "<=", ">", ">=", "=")
_TOLERANCE_COMPARATORS = ("=", "stable")
VERDICTS = ("binding", "not_binding")

_BUILTIN_TREE_RESOURCE = "bihar_tree.json"


@dataclass(frozen=True)
class Indicator:
    """A named quantity with a units tag and a note on where it came from."""

    name: str
    value: Any  # scalar (Real) or series (mapping year -> value)
    units: str = ""
    provenance: str = ""

    @property
    def is_scalar(self) -> bool:
        return isinstance(self.value, Real) and not isinstance(self.value, bool)


class IndicatorSet:
    """Unique-name collection of indicators, the input to ``evaluate``."""

    def __init__(self) -> None:
        self._items: dict[str, Indicator] = {}

    def add(self, name: str, value, units: str = "", provenance: str = "") -> None:
        if name in self._items:
            raise DuplicateKeyError(f"indicator {name!r} already present")
        self._items[name] = Indicator(name, value, units, provenance)

    def __contains__(self, name: str) -> bool:
        return name in self._items

    def __getitem__(self, name: str) -> Indicator:
        return self._items[name]

    def get(self, name: str) -> Indicator | None:
        return self._items.get(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._items))

    def to_dict(self) -> dict:
        out: dict = {}
        for name in self.names:
            ind = self._items[name]
            if ind.is_scalar:
                value = float(ind.value)
            elif isinstance(ind.value, Mapping):
                value = [[int(k), float(v)] for k, v in sorted(ind.value.items())]
            else:
                value = ind.value
            out[name] = {"value": value, "units": ind.units,
                         "provenance": ind.provenance}
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "IndicatorSet":
        out = cls()
        for name in sorted(data):
            entry = data[name]
            value = entry["value"]
            if isinstance(value, list):
                value = {int(y): float(v) for y, v in value}
            out.add(name, value, entry.get("units", ""),
                    entry.get("provenance", ""))
        return out


@dataclass(frozen=True)
class Predicate:
    """One comparison against a scalar indicator.

    Threshold comparators (``<  <=  >  >=  =``) test the value against
    ``threshold`` (``=`` within ``tolerance``). Trend comparators read the
    value as a signed change: ``trend_up`` means it is positive,
    ``trend_down`` negative, and ``stable`` within ``tolerance`` of zero.
    """

    indicator: str
    comparator: str
    threshold: float | None = None
    tolerance: float | None = None

    def __post_init__(self) -> None:
        if self.comparator not in COMPARATORS:
            raise TreeConfigError(
                f"unknown comparator {self.comparator!r}; "
                f"expected one of {COMPARATORS}"
            )
        needs_threshold = self.comparator in _THRESHOLD_COMPARATORS
        if needs_threshold and self.threshold is None:
            raise TreeConfigError(
                f"comparator {self.comparator!r} on {self.indicator!r} "
                "requires a threshold"
            )
        if not needs_threshold and self.threshold is not None:
            raise TreeConfigError(
                f"comparator {self.comparator!r} on {self.indicator!r} "
                "does not take a threshold"
            )
        needs_tolerance = self.comparator in _TOLERANCE_COMPARATORS
        if needs_tolerance and (self.tolerance is None or self.tolerance < 0):
            raise TreeConfigError(
                f"comparator {self.comparator!r} on {self.indicator!r} "
                "requires a non-negative tolerance"
            )
        if not needs_tolerance and self.tolerance is not None:
            raise TreeConfigError(
                f"comparator {self.comparator!r} on {self.indicator!r} "
                "does not take a tolerance"
            )

    def holds(self, value: float) -> bool:
        c = self.comparator
        if c == "<":
            return value < self.threshold
        if c == "<=":
            return value <= self.threshold
        if c == ">":
            return value > self.threshold
        if c == ">=":
            return value >= self.threshold
        if c == "=":
            return abs(value - self.threshold) <= self.tolerance
        if c == "trend_up":
            return value > 0.0
        if c == "trend_down":
            return value < 0.0
        return abs(value) <= self.tolerance  # stable

    def severity(self, value: float) -> float:
        """Normalized distance past the decision boundary (>= 0 when the
        predicate holds); used to rank simultaneous binding constraints."""
        c = self.comparator
        if c in ("<", "<=", ">", ">="):
            scale = abs(self.threshold) if self.threshold else 1.0
            distance = (value - self.threshold if c in (">", ">=")
                        else self.threshold - value)
            return distance / scale
        if c == "=":
            if self.tolerance == 0:
                return 0.0
            return (self.tolerance - abs(value - self.threshold)) / self.tolerance
        if c in ("trend_up", "trend_down"):
            return abs(value)
        if self.tolerance == 0:  # stable
            return 0.0
        return (self.tolerance - abs(value)) / self.tolerance


@dataclass(frozen=True)
class Branch:
    """Either a pointer to the next node or a terminal verdict."""

    node: str | None = None
    verdict: str | None = None

    def __post_init__(self) -> None:
        if (self.node is None) == (self.verdict is None):
            raise TreeConfigError(
                "each branch must carry exactly one of a child node id or a "
                "verdict"
            )
        if self.verdict is not None and self.verdict not in VERDICTS:
            raise TreeConfigError(
                f"verdict must be one of {VERDICTS}, got {self.verdict!r}"
            )


@dataclass(frozen=True)
class DiagnosticNode:
    id: str
    question: str
    predicate: Predicate
    on_true: Branch
    on_false: Branch
    constraint_label: str | None = None


class DiagnosticTree:
    """Validated forest of diagnostic question chains."""

    def __init__(self, nodes: Mapping[str, DiagnosticNode], roots: list[str],
                 manifest: Mapping[str, str]) -> None:
        self.nodes = dict(nodes)
        self.roots = list(roots)
        self.manifest = dict(manifest)
        self._validate()

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        if not self.roots:
            raise TreeConfigError("tree has no roots")
        for root in self.roots:
            if root not in self.nodes:
                raise DanglingReferenceError(f"root {root!r} is not a node")
        for node in self.nodes.values():
            for branch in (node.on_true, node.on_false):
                if branch.node is not None and branch.node not in self.nodes:
                    raise DanglingReferenceError(
                        f"node {node.id!r} references missing child "
                        f"{branch.node!r}"
                    )
            if node.predicate.indicator not in self.manifest:
                raise ManifestError(
                    f"node {node.id!r} references indicator "
                    f"{node.predicate.indicator!r} missing from the manifest"
                )
        reached: set[str] = set()
        for root in self.roots:
            self._check_acyclic(root, [], reached)
        orphans = sorted(set(self.nodes) - reached)
        if orphans:
            raise TreeConfigError(f"nodes unreachable from any root: {orphans}")
        self._check_labels()

    def _check_acyclic(self, node_id: str, stack: list[str],
                       reached: set[str]) -> None:
        if node_id in stack:
            raise CycleError(
                f"cycle detected: back edge {stack[-1]!r} -> {node_id!r}"
            )
        reached.add(node_id)
        stack.append(node_id)
        node = self.nodes[node_id]
        for branch in (node.on_true, node.on_false):
            if branch.node is not None:
                self._check_acyclic(branch.node, stack, reached)
        stack.pop()

    def _reachable(self, root: str) -> set[str]:
        seen: set[str] = set()
        frontier = [root]
        while frontier:
            node_id = frontier.pop()
            if node_id in seen:
                continue
            seen.add(node_id)
            node = self.nodes[node_id]
            for branch in (node.on_true, node.on_false):
                if branch.node is not None:
                    frontier.append(branch.node)
        return seen

    def _check_labels(self) -> None:
        # One constraint label per chain guarantees every label receives
        # exactly one verdict per evaluation.
        seen_labels: dict[str, str] = {}
        for root in self.roots:
            labels = {
                self.nodes[n].constraint_label
                for n in self._reachable(root)
                if self.nodes[n].constraint_label is not None
            }
            if len(labels) > 1:
                raise TreeConfigError(
                    f"chain rooted at {root!r} mixes constraint labels "
                    f"{sorted(labels)}; use one label per chain"
                )
            for label in labels:
                if label in seen_labels and seen_labels[label] != root:
                    raise TreeConfigError(
                        f"constraint label {label!r} appears under two roots "
                        f"({seen_labels[label]!r} and {root!r})"
                    )
                seen_labels[label] = root

    @property
    def constraint_labels(self) -> tuple[str, ...]:
        return tuple(sorted({
            n.constraint_label for n in self.nodes.values()
            if n.constraint_label is not None
        }))


def _parse_branch(raw, node_id: str, name: str) -> Branch:
    if not isinstance(raw, Mapping):
        raise TreeConfigError(
            f"{name} of node {node_id!r} must be an object with 'node' or "
            f"'verdict'"
        )
    unknown = set(raw) - {"node", "verdict"}
    if unknown:
        raise TreeConfigError(
            f"{name} of node {node_id!r} has unknown keys {sorted(unknown)}"
        )
    return Branch(node=raw.get("node"), verdict=raw.get("verdict"))


def tree_from_dict(config: Mapping) -> DiagnosticTree:
    """Build and validate a tree from parsed config data."""
    for key in ("roots", "nodes", "manifest"):
        if key not in config:
            raise TreeConfigError(f"tree config is missing top-level {key!r}")
    manifest_raw = config["manifest"]
    if isinstance(manifest_raw, Mapping):
        manifest = {str(k): str(v) for k, v in manifest_raw.items()}
    else:
        manifest = {str(name): "" for name in manifest_raw}
    nodes: dict[str, DiagnosticNode] = {}
    for node_id, raw in config["nodes"].items():
        pred_raw = raw.get("predicate")
        if not isinstance(pred_raw, Mapping) or "indicator" not in pred_raw:
            raise TreeConfigError(
                f"node {node_id!r} needs a predicate with an indicator"
            )
        comparator = str(pred_raw.get("comparator", ""))
        if comparator == "==":
            comparator = "="
        predicate = Predicate(
            indicator=str(pred_raw["indicator"]),
            comparator=comparator,
            threshold=pred_raw.get("threshold"),
            tolerance=pred_raw.get("tolerance"),
        )
        nodes[str(node_id)] = DiagnosticNode(
            id=str(node_id),
            question=str(raw.get("question", "")),
            predicate=predicate,
            on_true=_parse_branch(raw.get("on_true"), node_id, "on_true"),
            on_false=_parse_branch(raw.get("on_false"), node_id, "on_false"),
            constraint_label=raw.get("constraint_label"),
        )
    return DiagnosticTree(nodes, [str(r) for r in config["roots"]], manifest)


def load_tree(source) -> DiagnosticTree:
    """Load a tree from JSON text, a path, or an open stream."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeConfigError(f"tree config is not valid JSON: {exc}") from None
    return tree_from_dict(config)


def builtin_bihar_tree() -> DiagnosticTree:
    """The shipped default tree for a Bihar-style crop-sector diagnosis.

    Five chains, one per candidate constraint: agricultural land,
    technology, agricultural markets, crop diversification and input
    costs. The thresholds are editable defaults, not measured constants;
    copy and adapt the underlying JSON for other regions.
    """
    data = resources.files(__package__).joinpath("data") \
        .joinpath(_BUILTIN_TREE_RESOURCE).read_text(encoding="utf-8")
    return load_tree(data)


# -- evaluation ----------------------------------------------------------


@dataclass(frozen=True)
class DiagnosticReport:
    """Outcome of evaluating a tree: verdicts plus the evidence trail."""

    binding_constraints: tuple[str, ...]
    non_binding: tuple[str, ...]
    severity: dict[str, float] = field(compare=True)
    evidence: dict[str, dict] = field(compare=True)
    trace: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {
            "binding_constraints": list(self.binding_constraints),
            "non_binding": list(self.non_binding),
            "severity": dict(self.severity),
            "evidence": self.evidence,
            "trace": list(self.trace),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        if self.binding_constraints:
            lines.append("Binding constraints (most severe first):")
            for label in self.binding_constraints:
                ev = self.evidence[label]
                lines.append(
                    f"  - {label}: {ev['indicator']} = {ev['value']:g} "
                    f"(severity {self.severity[label]:.2f})"
                )
        else:
            lines.append("Binding constraints: none")
        lines.append("Not binding:")
        for label in self.non_binding:
            ev = self.evidence[label]
            lines.append(f"  - {label}: {ev['indicator']} = {ev['value']:g}")
        return "\n".join(lines) + "\n"


def _scalar_value(indicators: IndicatorSet, name: str,
                  manifest_units: str, node_id: str) -> float:
    indicator = indicators.get(name)
    if indicator is None:
        raise EvaluationError(
            f"indicator {name!r} (node {node_id!r}) missing from indicator set"
        )
    if not indicator.is_scalar:
        raise IndicatorTypeError(
            f"indicator {name!r} (node {node_id!r}) is a series; predicates "
            "need scalars, reduce it upstream"
        )
    if manifest_units and indicator.units and manifest_units != indicator.units:
        raise EvaluationError(
            f"indicator {name!r} has units {indicator.units!r} but the tree "
            f"expects {manifest_units!r}"
        )
    value = float(indicator.value)
    if not math.isfinite(value):
        raise EvaluationError(f"indicator {name!r} is not finite: {value!r}")
    return value


def evaluate(tree: DiagnosticTree, indicators: IndicatorSet) -> DiagnosticReport:
    """Walk every chain of the tree against the indicators.

    Each chain ends in exactly one verdict; the verdict is attributed to
    the chain's constraint label (the most recent labeled node on the
    path). Binding constraints are ranked by how far the deciding value
    sits past its threshold, normalized by the threshold's magnitude.
    """
    for name in tree.manifest:
        if name not in indicators:
            raise EvaluationError(
                f"manifest indicator {name!r} missing from indicator set"
            )
    binding: dict[str, float] = {}
    non_binding: list[str] = []
    evidence: dict[str, dict] = {}
    trace: list[dict] = []
    for root in tree.roots:
        steps: list[dict] = []
        label: str | None = None
        node = tree.nodes[root]
        while True:
            pred = node.predicate
            value = _scalar_value(
                indicators, pred.indicator,
                tree.manifest.get(pred.indicator, ""), node.id,
            )
            result = pred.holds(value)
            steps.append({
                "node": node.id,
                "question": node.question,
                "indicator": pred.indicator,
                "value": value,
                "comparator": pred.comparator,
                "threshold": pred.threshold,
                "tolerance": pred.tolerance,
                "result": result,
            })
            if node.constraint_label is not None:
                label = node.constraint_label
            branch = node.on_true if result else node.on_false
            if branch.verdict is not None:
                if label is not None:
                    evidence[label] = dict(steps[-1])
                    if branch.verdict == "binding":
                        binding[label] = pred.severity(value)
                    else:
                        non_binding.append(label)
                trace.append({
                    "root": root,
                    "constraint_label": label,
                    "verdict": branch.verdict,
                    "steps": steps,
                })
                break
            node = tree.nodes[branch.node]
    ranked = sorted(binding, key=lambda lab: (-binding[lab], lab))
    return DiagnosticReport(
        binding_constraints=tuple(ranked),
        non_binding=tuple(sorted(non_binding)),
        severity={lab: binding[lab] for lab in ranked},
        evidence=evidence,
        trace=tuple(trace),
    )
