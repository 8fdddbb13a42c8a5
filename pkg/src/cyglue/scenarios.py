"""Scenarios: declarative gluing data, built-in presets, runs, sweeps and reports.

A scenario is a plain tree (lattice, two components, twist, certificates to
issue, expected values) that round-trips through JSON or YAML.  Presets build
that tree from integer parameters; the formulas live here in code and the
file format stays free of expressions.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Callable

import yaml

from .cones import ConeTooLarge
from .invariants import invariant_report
from .k3_cones import (
    free_system_certificate,
    oguiso_ample_certificate,
    oguiso_center_free_certificate,
    wehler_is_ample,
    wehler_no_minus_two_certificate,
)
from .lattice import Isometry, Lattice, NotAnIsometry, identity
from .oguiso import center_class, fiber_class, hyperplane_class, oguiso_lattice, translation_pullback
from .projectivity import algdim_evidence, classify, nonprojectivity_report
from .snc import (
    ComponentDescriptor,
    GluingDescriptor,
    hypothesis_report,
    normal_bundle_class,
    product_of_lines,
    projective_space,
)
from .wehler import involution_pullback, order_and_growth, power_closed_form, wehler_lattice

STAGES = ("hypotheses", "ample", "invariants", "projectivity")


class ScenarioError(ValueError):
    """Bad scenario input: unknown preset, unbound parameter, shape mismatch."""


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


# ---------------------------------------------------------------------------
# scenario data


@dataclass(frozen=True)
class Scenario:
    name: str
    lattice: dict
    x1: dict
    x2: dict
    twist: dict
    parameters: dict = field(default_factory=dict)
    preset: str | None = None
    certificates: tuple = ()
    expectations: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)
    require_infinite_twist: bool = False
    notes: tuple = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["certificates"] = list(self.certificates)
        d["notes"] = list(self.notes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        if not isinstance(d, dict):
            raise ScenarioError("scenario must be a mapping")
        missing = [k for k in ("name", "lattice", "x1", "x2", "twist") if k not in d]
        if missing:
            raise ScenarioError(f"scenario is missing {', '.join(missing)}")
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ScenarioError(f"unknown scenario keys: {', '.join(sorted(unknown))}")
        kw = dict(d)
        kw["certificates"] = tuple(kw.get("certificates") or ())
        kw["notes"] = tuple(kw.get("notes") or ())
        for key in ("parameters", "expectations", "formulas"):
            kw[key] = dict(kw.get(key) or {})
        return cls(**kw)


def center_runs(classes) -> list[dict]:
    """Compress a list of center vectors into consecutive {class, count} runs."""
    runs: list[dict] = []
    for c in classes:
        c = [int(x) for x in c]
        if runs and runs[-1]["class"] == c:
            runs[-1]["count"] += 1
        else:
            runs.append({"class": c, "count": 1})
    return runs


def expand_centers(spec) -> list[tuple[int, ...]]:
    out = []
    for item in spec or ():
        if isinstance(item, dict):
            if "class" not in item:
                raise ScenarioError(f"center entry {item!r} has no 'class'")
            count = item.get("count", 1)
            if not isinstance(count, int) or count < 0:
                raise ScenarioError(f"center count must be a nonnegative integer, got {count!r}")
            out += [tuple(item["class"])] * count
        else:
            out.append(tuple(item))
    return out


def override_center(s: Scenario, side: int, index: int, coords) -> Scenario:
    """Replace one blow-up center (counted after expanding runs)."""
    key = {1: "x1", 2: "x2"}.get(side)
    if key is None:
        raise ScenarioError("side must be 1 or 2")
    comp = dict(getattr(s, key))
    centers = expand_centers(comp.get("centers"))
    if not centers:
        raise ScenarioError(f"component {side} has no centers to override")
    try:
        centers[index] = tuple(coords)
    except IndexError:
        raise ScenarioError(f"component {side} has {len(centers)} centers, no index {index}") from None
    comp["centers"] = center_runs(centers)
    return replace(s, **{key: comp}, name=f"{s.name} (center override)")


# ---------------------------------------------------------------------------
# building descriptors


def _ints(v, what: str) -> tuple[int, ...]:
    if not isinstance(v, (list, tuple)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ScenarioError(f"{what} must be a list of integers, got {v!r}")
    return tuple(v)


def build_lattice(spec: dict) -> Lattice:
    preset = spec.get("preset")
    if preset == "wehler":
        return wehler_lattice()
    if preset == "oguiso":
        return oguiso_lattice()
    if preset is not None:
        raise ScenarioError(f"unknown lattice preset {preset!r}")
    if "gram" not in spec:
        raise ScenarioError("custom lattice needs a 'gram' matrix")
    gram = tuple(_ints(r, "gram row") for r in spec["gram"])
    try:
        return Lattice(spec.get("name", "custom"), gram, tuple(spec.get("labels") or ()),
                       tuple(_ints(v, "fiber class") for v in spec.get("fiber_classes") or ()))
    except ValueError as e:
        raise ScenarioError(str(e)) from e


def _component(spec: dict, lat: Lattice, label: str) -> ComponentDescriptor:
    kind = spec.get("ambient")
    if kind == "P1xP1xP1":
        if lat.rank != 3:
            raise ScenarioError("P1xP1xP1 needs a rank-3 lattice")
        amb = product_of_lines(lat)
    elif kind == "P3":
        h = _ints(spec.get("hyperplane"), f"{label} hyperplane")
        if len(h) != lat.rank:
            raise ScenarioError(f"{label}: hyperplane has {len(h)} coordinates, lattice rank is {lat.rank}")
        amb = projective_space(lat(h))
    else:
        raise ScenarioError(f"{label}: unknown ambient {kind!r}")
    centers = []
    for c in expand_centers(spec.get("centers")):
        c = _ints(list(c), f"{label} center")
        if len(c) != lat.rank:
            raise ScenarioError(f"{label}: center {list(c)} does not match lattice rank {lat.rank}")
        centers.append(lat(c))
    return ComponentDescriptor(amb, tuple(centers), label)


def build_twist(spec: dict, lat: Lattice) -> Isometry:
    preset = spec.get("preset")
    try:
        if preset == "identity":
            return identity(lat)
        if preset == "wehler_iota_power":
            if lat != wehler_lattice():
                raise ScenarioError("wehler_iota_power needs the wehler lattice")
            return power_closed_form(int(spec["a"]))
        if preset == "wehler_involution":
            if lat != wehler_lattice():
                raise ScenarioError("wehler_involution needs the wehler lattice")
            i, j = spec["pair"]
            return involution_pullback(i, j)
        if preset == "oguiso_translation":
            if lat != oguiso_lattice():
                raise ScenarioError("oguiso_translation needs the oguiso lattice")
            return translation_pullback(int(spec["a"]))
        if preset is not None:
            raise ScenarioError(f"unknown twist preset {preset!r}")
        if "matrix" not in spec:
            raise ScenarioError("twist needs a 'preset' or a 'matrix'")
        return Isometry(lat, tuple(_ints(r, "twist row") for r in spec["matrix"]), name="custom")
    except KeyError as e:
        raise ScenarioError(f"twist preset {preset!r} is missing parameter {e}") from None
    except NotAnIsometry as e:
        raise ScenarioError(str(e)) from e
    except ValueError as e:
        if isinstance(e, ScenarioError):
            raise
        raise ScenarioError(str(e)) from e


def build_gluing(s: Scenario) -> GluingDescriptor:
    lat = build_lattice(s.lattice)
    twist = build_twist(s.twist, lat)
    if s.require_infinite_twist and not order_and_growth(twist).infinite:
        raise ScenarioError("this scenario needs a twist of infinite order")
    return GluingDescriptor(_component(s.x1, lat, "X1"), _component(s.x2, lat, "X2"), twist, s.name)


# ---------------------------------------------------------------------------
# presets


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ScenarioError(msg)


def _wehler_center_certs(name: str, cls) -> list[dict]:
    return [{"name": f"{name}_ample", "kind": "wehler_ample", "class": list(cls)},
            {"name": f"{name}_free", "kind": "wehler_free", "class": list(cls)}]


def preset_main(a: int) -> Scenario:
    _require(a >= 1, "main needs a >= 1")
    center = [16 * a * a - a + 4, 4 - 8 * a, 4 + 8 * a]
    return Scenario(
        name=f"main(a={a})", preset="main", parameters={"a": a},
        lattice={"preset": "wehler"},
        x1={"ambient": "P1xP1xP1", "centers": [{"class": [1, 0, 0], "count": a}, {"class": center, "count": 1}]},
        x2={"ambient": "P1xP1xP1", "centers": []},
        twist={"preset": "wehler_iota_power", "a": a},
        certificates=tuple(_wehler_center_certs("center", center)),
        expectations={
            "d_semistable": True,
            "x1_last_center": center,
            "b2_x0": a + 4,
            "b2_x": a + 3,
            "e_x": -256 * a * a + 32 * a - 224,
            "cert:center_ample": True,
            "cert:center_free": True,
            "classification": "FiberRayOnly",
            "witness_l2": [1, 0, 0],
            "non_projective": True,
            "algdim": 1,
        },
        formulas={"x1_last_center": "(16a^2-a+4, 4-8a, 4+8a)", "b2_x0": "a+4", "b2_x": "a+3",
                  "e_x": "-256a^2+32a-224"},
    )


def preset_arbitrary_b2(a: int, c: int) -> Scenario:
    _require(a >= 1, "arbitrary_b2 needs a >= 1")
    _require(1 <= c < 8 * a * a + 6, f"arbitrary_b2 needs 1 <= c < 8a^2+6 = {8 * a * a + 6}")
    center = [16 * a * a + 4 - c, 4 - 8 * a, 4 + 8 * a]
    return Scenario(
        name=f"arbitrary_b2(a={a}, c={c})", preset="arbitrary_b2", parameters={"a": a, "c": c},
        lattice={"preset": "wehler"},
        x1={"ambient": "P1xP1xP1", "centers": [{"class": [1, 0, 0], "count": c}, {"class": center, "count": 1}]},
        x2={"ambient": "P1xP1xP1", "centers": []},
        twist={"preset": "wehler_iota_power", "a": a},
        certificates=tuple(_wehler_center_certs("center", center)),
        expectations={
            "d_semistable": True,
            "x1_last_center": center,
            "b2_x": c + 3,
            "e_x1": -184 - 32 * (8 * a * a - c),
            "e_x": -224 - 32 * (8 * a * a - c),
            "cert:center_ample": True,
            "cert:center_free": True,
            "non_projective": True,
        },
        formulas={"x1_last_center": "(16a^2+4-c, 4-8a, 4+8a)", "b2_x": "c+3",
                  "e_x1": "-184-32(8a^2-c)", "e_x": "-224-32(8a^2-c)"},
    )


def preset_double_blowup(a: int) -> Scenario:
    _require(a >= 1, "double_blowup needs a >= 1")
    lat = wehler_lattice()
    c1 = lat(4 * a * a + 2, 2 - 4 * a, 2 + 4 * a)
    c2 = power_closed_form(-a)(c1)
    return Scenario(
        name=f"double_blowup(a={a})", preset="double_blowup", parameters={"a": a},
        lattice={"preset": "wehler"},
        x1={"ambient": "P1xP1xP1",
            "centers": [{"class": [1, 0, 0], "count": 8 * a * a}, {"class": list(c1.coords), "count": 1}]},
        x2={"ambient": "P1xP1xP1", "centers": [{"class": list(c2.coords), "count": 1}]},
        twist={"preset": "wehler_iota_power", "a": a},
        certificates=tuple(_wehler_center_certs("c1", c1.coords) + _wehler_center_certs("c2", c2.coords)),
        expectations={
            "d_semistable": True,
            "obstruction": [0, 0, 0],
            "n1": [-12 * a * a, 4 * a, -4 * a],
            "cert:c1_ample": True,
            "cert:c1_free": True,
            "cert:c2_ample": True,
            "cert:c2_free": True,
            "non_projective": True,
        },
        formulas={"n1": "(-12a^2, 4a, -4a)"},
    )


def preset_oguiso(a: int) -> Scenario:
    _require(a >= 1, "oguiso needs a positive integer a")
    h = hyperplane_class()
    return Scenario(
        name=f"oguiso(a={a})", preset="oguiso", parameters={"a": a},
        lattice={"preset": "oguiso"},
        x1={"ambient": "P3", "hyperplane": list(h.coords),
            "centers": [{"class": list(fiber_class().coords), "count": a},
                        {"class": list(center_class(a).coords), "count": 1}]},
        x2={"ambient": "P3", "hyperplane": list(h.coords), "centers": []},
        twist={"preset": "oguiso_translation", "a": a},
        certificates=(
            {"name": "polarization_ample", "kind": "oguiso_ample", "a": a, "k": a, "z_bound": 50},
            {"name": "center_free", "kind": "oguiso_center_free", "a": a, "z_bound": 50},
        ),
        expectations={
            "d_semistable": True,
            "x1_last_center": list(center_class(a).coords),
            "b2_x0": a,
            "b2_x": a - 1,
            "cert:polarization_ample": True,
            "cert:center_free": True,
            "classification": "TrivialOnly",
            "non_projective": True,
            "algdim": 0,
        },
        formulas={"x1_last_center": "(120a^2+79a+32, 24, 12a+8)", "b2_x0": "a", "b2_x": "a-1"},
    )


_QUARTIC_NOTE = ("sample restriction data: the twist is the translation pullback on the rank-3 "
                 "elliptic K3 lattice, chosen only as an infinite-order isometry; it is not "
                 "derived from the source construction")


def _quartic(name: str, centers1: list, centers2: list, b2: int, extra: dict) -> Scenario:
    h = list(hyperplane_class().coords)
    return Scenario(
        name=name, preset=name, parameters={},
        lattice={"preset": "oguiso"},
        x1={"ambient": "P3", "hyperplane": h, "centers": center_runs(centers1)},
        x2={"ambient": "P3", "hyperplane": h, "centers": center_runs(centers2)},
        twist={"preset": "oguiso_translation", "a": 1},
        require_infinite_twist=True,
        expectations={"d_semistable": True, "b2_x": b2, **extra},
        notes=(_QUARTIC_NOTE,),
    )


def preset_quartic_rho1() -> Scenario:
    h4 = [4 * x for x in hyperplane_class().coords]
    return _quartic("quartic_rho1", [h4], [h4], 1, {})


def preset_quartic_rho2() -> Scenario:
    h = hyperplane_class().coords
    h2, h4 = [2 * x for x in h], [4 * x for x in h]
    return _quartic("quartic_rho2", [h4], [h2, h2], 2, {})


def preset_quartic_rho3() -> Scenario:
    h2 = [2 * x for x in hyperplane_class().coords]
    return _quartic("quartic_rho3", [h2, h2], [h2, h2], 3, {
        "b2_x0": 4,
        "classification": "FiberRayOnly",
        "witness_l1": [4, -1, -1],
        "witness_l2": [0, 0, 0],
        "algdim": 1,
    })


def preset_identity_control() -> Scenario:
    return Scenario(
        name="identity_control", preset="identity_control", parameters={},
        lattice={"preset": "wehler"},
        x1={"ambient": "P1xP1xP1", "centers": []},
        x2={"ambient": "P1xP1xP1", "centers": []},
        twist={"preset": "identity"},
        expectations={"d_semistable": False, "classification": "BigPairExists",
                      "witness_l1": [1, 1, 1], "witness_l2": [1, 1, 1]},
        notes=("control: untwisted gluing of two copies of P1xP1xP1; it is not d-semistable "
               "and only exercises the classifier",),
    )


PRESETS: dict[str, Callable[..., Scenario]] = {
    "main": preset_main,
    "arbitrary_b2": preset_arbitrary_b2,
    "double_blowup": preset_double_blowup,
    "oguiso": preset_oguiso,
    "quartic_rho1": preset_quartic_rho1,
    "quartic_rho2": preset_quartic_rho2,
    "quartic_rho3": preset_quartic_rho3,
    "identity_control": preset_identity_control,
}


def preset_parameters(name: str) -> tuple[str, ...]:
    fn = PRESETS[name]
    return fn.__code__.co_varnames[:fn.__code__.co_argcount]


def expand_preset(name: str, params: dict | None = None) -> Scenario:
    if name not in PRESETS:
        raise ScenarioError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    params = dict(params or {})
    wanted = preset_parameters(name)
    unbound = [p for p in wanted if p not in params]
    if unbound:
        raise ScenarioError(f"preset {name} has unbound parameter(s): {', '.join(unbound)}")
    extra = sorted(set(params) - set(wanted))
    if extra:
        raise ScenarioError(f"preset {name} takes no parameter(s): {', '.join(extra)}")
    for k, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ScenarioError(f"parameter {k} must be an integer, got {v!r}")
    return PRESETS[name](**params)


def load_scenario(source: str | Path, params: dict | None = None) -> Scenario:
    """A preset name, or a JSON/YAML scenario file (which may itself name a preset)."""
    if isinstance(source, str) and source in PRESETS:
        return expand_preset(source, params)
    path = Path(source)
    if not path.is_file():
        raise ScenarioError(f"{source!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ScenarioError(f"{path}: cannot parse: {e}") from e
    if isinstance(data, dict) and set(data) <= {"preset", "parameters"} and "preset" in data:
        merged = {**(data.get("parameters") or {}), **(params or {})}
        return expand_preset(data["preset"], merged)
    s = Scenario.from_dict(data)
    if params:
        s = replace(s, parameters={**s.parameters, **params})
    return s


# ---------------------------------------------------------------------------
# running


def issue_certificate(spec: dict):
    kind = spec.get("kind")
    if kind == "wehler_ample":
        return wehler_is_ample(wehler_lattice()(tuple(spec["class"])))
    if kind == "wehler_free":
        return free_system_certificate(wehler_lattice()(tuple(spec["class"])))
    if kind == "oguiso_ample":
        return oguiso_ample_certificate(spec["a"], spec["k"], spec.get("z_bound", 50))
    if kind == "oguiso_center_free":
        return oguiso_center_free_certificate(spec["a"], spec.get("z_bound", 50))
    if kind == "wehler_no_minus_two":
        return wehler_no_minus_two_certificate(spec.get("bound", 10))
    raise ScenarioError(f"unknown certificate kind {kind!r}")


def _cert_passes(d: dict) -> bool:
    if d["kind"] == "ample":
        return d["ample"]
    if d["kind"] == "free":
        return d["free"] is True
    return d["excludes_minus_two"]


# which stage produces each observable
_OBSERVABLE_STAGE = {
    "d_semistable": "hypotheses", "obstruction": "hypotheses", "n1": "hypotheses",
    "b2_x0": "invariants", "b2_x": "invariants", "e_x1": "invariants", "e_x2": "invariants",
    "e_x0": "invariants", "e_x": "invariants",
    "classification": "projectivity", "kodaira_bound": "projectivity", "witness_l1": "projectivity",
    "witness_l2": "projectivity", "non_projective": "projectivity", "algdim": "projectivity",
}


def _stage_of(name: str) -> str | None:
    if name.startswith("cert:"):
        return "ample"
    if name.startswith("x1_") or name.startswith("x2_"):
        return None
    return _OBSERVABLE_STAGE.get(name, "unknown")


@dataclass(frozen=True)
class Report:
    scenario: dict
    parameters: dict
    checks: list
    hypotheses: dict | None = None
    invariants: dict | None = None
    certificates: list = field(default_factory=list)
    projectivity: dict | None = None
    algdim: dict | None = None
    expectations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e["pass"] for e in self.expectations)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.ok else "fail"
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        d = {k: v for k, v in d.items() if k != "status"}
        return cls(**d)

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _normalise_checks(checks) -> list[str]:
    if checks is None:
        return list(STAGES)
    checks = list(checks)
    bad = [c for c in checks if c not in STAGES]
    if bad:
        raise ScenarioError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(STAGES)}")
    return [s for s in STAGES if s in checks]


def _stage(name: str, fn):
    try:
        return fn()
    except (ScenarioError, ConeTooLarge):
        raise
    except Exception as e:  # noqa: BLE001 - re-raised with the stage attached
        raise StageError(name, e) from e


def run(s: Scenario, checks=None) -> Report:
    """Run the requested stages in order and compare the declared expectations."""
    checks = _normalise_checks(checks)
    g = build_gluing(s)
    actual: dict = {}
    for tag, comp in (("x1", g.x1), ("x2", g.x2)):
        if comp.centers:
            actual[f"{tag}_last_center"] = list(comp.centers[-1].coords)
    out: dict = {}

    if "hypotheses" in checks:
        hyp = _stage("hypotheses", lambda: hypothesis_report(g))
        out["hypotheses"] = hyp.as_dict()
        out["hypotheses"]["n1"] = list(normal_bundle_class(g.x1).coords)
        out["hypotheses"]["n2"] = list(normal_bundle_class(g.x2).coords)
        actual.update(d_semistable=hyp.d_semistable, obstruction=list(hyp.obstruction.coords),
                      n1=out["hypotheses"]["n1"])

    if "ample" in checks:
        certs = _stage("ample", lambda: [(c.get("name", c.get("kind")), issue_certificate(c).as_dict())
                                         for c in s.certificates])
        out["certificates"] = [{"name": n, **d} for n, d in certs]
        for n, d in certs:
            actual[f"cert:{n}"] = _cert_passes(d)

    if "invariants" in checks:
        inv = _stage("invariants", lambda: invariant_report(g)).as_dict()
        out["invariants"] = inv
        actual.update({k: inv[k] for k in ("b2_x0", "b2_x", "e_x1", "e_x2", "e_x0", "e_x")})

    if "projectivity" in checks:
        verdict = _stage("projectivity", lambda: classify(g))
        proj = verdict.as_dict()
        proj["nonprojectivity"] = nonprojectivity_report(verdict)
        out["projectivity"] = proj
        alg = algdim_evidence(verdict)
        out["algdim"] = alg.as_dict()
        actual.update(classification=verdict.classification, kodaira_bound=verdict.kodaira_bound,
                      non_projective=proj["nonprojectivity"]["non_projective"], algdim=alg.value)
        if verdict.witness is not None:
            actual.update(witness_l1=list(verdict.witness[0]), witness_l2=list(verdict.witness[1]))

    expectations = []
    for name, expected in s.expectations.items():
        stage = _stage_of(name)
        if stage is not None and stage not in checks:
            continue
        got = actual.get(name)
        expectations.append({"name": name, "expected": expected, "actual": got,
                             "pass": name in actual and got == expected})
    return Report(scenario=s.to_dict(), parameters=dict(s.parameters), checks=checks,
                  expectations=expectations, certificates=out.get("certificates", []),
                  **{k: out.get(k) for k in ("hypotheses", "invariants", "projectivity", "algdim")})


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepItem:
    parameters: dict
    report: Report | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.report is not None and self.report.ok


@dataclass(frozen=True)
class SweepResult:
    preset: str
    items: list

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def summary(self) -> list[dict]:
        rows = []
        for item in self.items:
            row = {"parameters": item.parameters,
                   "status": "error" if item.error else ("pass" if item.ok else "fail")}
            if item.error:
                row["error"] = item.error
            else:
                row["values"] = {e["name"]: {"expected": e["expected"], "actual": e["actual"], "pass": e["pass"]}
                                 for e in item.report.expectations}
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        return {"preset": self.preset, "status": "pass" if self.ok else "fail",
                "summary": self.summary(),
                "reports": [i.report.to_dict() if i.report else None for i in self.items]}


def _sweep_item(preset: str, params: dict, checks) -> tuple[dict | None, str | None]:
    try:
        return run(expand_preset(preset, params), checks).to_dict(), None
    except (ScenarioError, StageError, ConeTooLarge) as e:
        return None, f"{type(e).__name__}: {e}"


def sweep(preset: str, bindings: list[dict], checks=None, workers: int = 1) -> SweepResult:
    """Run ``preset`` for each parameter binding; errors are collected per item.

    Items are independent, so with ``workers > 1`` they run in separate
    processes.  Output is ordered by the parameter values, not by completion.
    """
    if preset not in PRESETS:
        raise ScenarioError(f"unknown preset {preset!r}")
    checks = _normalise_checks(checks)
    order = sorted(range(len(bindings)), key=lambda i: tuple(sorted(bindings[i].items())))
    ordered = [bindings[i] for i in order]
    if workers > 1 and len(ordered) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sweep_item, [preset] * len(ordered), ordered, [checks] * len(ordered)))
    else:
        results = [_sweep_item(preset, p, checks) for p in ordered]
    items = [SweepItem(p, Report.from_dict(r) if r else None, err) for p, (r, err) in zip(ordered, results)]
    return SweepResult(preset, items)


# ---------------------------------------------------------------------------
# text rendering


def render_text(report: dict) -> str:
    sc = report["scenario"]
    lines = [f"scenario: {sc['name']}"]
    if report["parameters"]:
        lines.append("parameters: " + ", ".join(f"{k}={v}" for k, v in sorted(report["parameters"].items())))
    lines += [f"note: {n}" for n in sc.get("notes", [])]
    hyp = report.get("hypotheses")
    if hyp:
        d = hyp["d_semistable"]
        lines.append(f"d-semistable: {d['value']} (obstruction {d['obstruction']})")
    for c in report.get("certificates", []):
        passed = _cert_passes(c)
        lines.append(f"certificate {c['name']}: {c['kind']} {c.get('class', '')} -> {'ok' if passed else 'NOT certified'}")
    inv = report.get("invariants")
    if inv:
        lines.append(f"b2(X0)={inv['b2_x0']} b2(X)={inv['b2_x']} e(X1)={inv['e_x1']} e(X2)={inv['e_x2']} "
                     f"e(X0)={inv['e_x0']} e(X)={inv['e_x']}")
        lines += [f"warning: {w}" for w in inv["warnings"]]
    proj = report.get("projectivity")
    if proj:
        lines.append(f"projectivity: {proj['classification']} (kodaira bound {proj['kodaira_bound']})")
        if proj["witness"]:
            lines.append(f"  witness L1={proj['witness']['L1']} L2={proj['witness']['L2']}")
    alg = report.get("algdim")
    if alg:
        lines.append(f"algebraic dimension evidence: {alg['value']}")
    formulas = sc.get("formulas", {})
    for e in report["expectations"]:
        f = f" [{formulas[e['name']]}]" if e["name"] in formulas else ""
        lines.append(f"{'PASS' if e['pass'] else 'FAIL'} {e['name']}{f}: expected {e['expected']}, got {e['actual']}")
    lines.append("status: " + ("pass" if all(e["pass"] for e in report["expectations"]) else "fail"))
    return "\n".join(lines) + "\n"


def render_sweep_text(result: SweepResult) -> str:
    rows = result.summary()
    if not rows:
        return f"sweep {result.preset}: empty range\n"
    names = []
    for r in rows:
        for n in r.get("values", {}):
            if n not in names:
                names.append(n)
    formulas = next((i.report.scenario.get("formulas", {}) for i in result.items if i.report), {})
    numeric = [n for n in names if n in formulas]
    head = ["params", "status"] + [f"{n} = {formulas[n]}" for n in numeric]
    body = []
    for r in rows:
        cells = [",".join(f"{k}={v}" for k, v in sorted(r["parameters"].items())), r["status"]]
        for n in numeric:
            v = r.get("values", {}).get(n)
            cells.append("-" if v is None else f"{v['actual']} / {v['expected']}")
        body.append(cells)
    widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*head).rstrip()] + [fmt.format(*b).rstrip() for b in body]
    errors = [f"error at {r['parameters']}: {r['error']}" for r in rows if r["status"] == "error"]
    passed = sum(r["status"] == "pass" for r in rows)
    out += errors + [f"{passed}/{len(rows)} passed"]
    return "\n".join(out) + "\n"
