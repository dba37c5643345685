"""TOML run configurations: named frames, maps, fields, geometry, checks.

Complex numbers are written as [re, im] pairs.  Geometry numerics may be
decimal strings ("0.25") or plain numbers.  Reference problems are
collected and reported all at once rather than stopping at the first.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field as dc_field

try:
    import tomllib
except ModuleNotFoundError:                      # Python < 3.11
    import tomli as tomllib

from .errors import (ConfigError, NoConvergence, NotEmbracing, ParseError,
                     PoleHit, QuatmonoError)
from .fields import ConstantField, ExprField, MapField
from .frame import Frame
from .geometry import (Box3, Curve3, Patch, Region3, Surface3,
                       check_patch_rank, circle3, expr_patch,
                       parametric_curve3, polyline3)
from .holo import HoloFn
from .monogenic import GMonogenicMap
from .quad import QuadratureSpec
from .verify import (ALL_THEOREM_IDS, THEOREM_TOL, TheoremId,
                     verify_cauchy_curve, verify_cauchy_formula,
                     verify_corollary, verify_gauss_ostr,
                     verify_homotopy_pair, verify_lemma, verify_stokes,
                     verify_surface_theorem)

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckSpec:
    name: str
    theorem: TheoremId
    tol: float
    inputs: dict                     # resolved objects for the verify call
    descriptor: dict                 # serializable description of the inputs
    input_hash: str


@dataclass
class RunConfig:
    quad: QuadratureSpec
    default_tol: float
    seed: int
    output_path: str | None
    frames: dict[str, Frame]
    maps: dict[str, GMonogenicMap]
    fields: dict[str, object]
    curves: dict[str, Curve3]
    surfaces: dict[str, object]      # Patch or Surface3
    regions: dict[str, Region3]
    checks: list[CheckSpec] = dc_field(default_factory=list)


# ----------------------------- value parsing -------------------------------

def _as_float(value, where: str, errors: list) -> float:
    if isinstance(value, bool):
        errors.append(f"{where}: expected a number, got a boolean")
        return 0.0
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            errors.append(f"{where}: {value!r} is not a decimal number")
            return 0.0
    errors.append(f"{where}: expected a number or decimal string")
    return 0.0


def _as_complex(value, where: str, errors: list) -> complex:
    if isinstance(value, list) and len(value) == 2:
        return complex(_as_float(value[0], where, errors),
                       _as_float(value[1], where, errors))
    if isinstance(value, (int, float, str)) and not isinstance(value, bool):
        return complex(_as_float(value, where, errors), 0.0)
    errors.append(f"{where}: expected [re, im] or a real number")
    return 0.0


def _as_vec3(value, where: str, errors: list) -> tuple[float, float, float]:
    if not isinstance(value, list) or len(value) != 3:
        errors.append(f"{where}: expected a 3-vector")
        return (0.0, 0.0, 0.0)
    return tuple(_as_float(v, f"{where}[{i}]", errors) for i, v in enumerate(value))


def _require(table: dict, key: str, where: str, errors: list):
    if key not in table:
        errors.append(f"{where}: missing key {key!r}")
        return None
    return table[key]


# --------------------------- section builders ------------------------------

def _build_frames(raw: dict, errors: list) -> dict[str, Frame]:
    frames = {}
    for name, table in raw.items():
        where = f"frames.{name}"
        vals = {}
        for key in ("a1", "a2", "b1", "b2"):
            entry = _require(table, key, where, errors)
            vals[key] = 0j if entry is None else _as_complex(entry, f"{where}.{key}",
                                                             errors)
        frames[name] = Frame(vals["a1"], vals["a2"], vals["b1"], vals["b2"])
    return frames


def _parse_components(entry, where: str, errors: list):
    if not isinstance(entry, list) or len(entry) != 4:
        errors.append(f"{where}: expected four component expressions")
        return None
    out = []
    for i, src in enumerate(entry):
        if not isinstance(src, str):
            errors.append(f"{where}[{i}]: expected an expression string")
            return None
        out.append(src)
    return out


def _build_maps(raw: dict, frames: dict, errors: list) -> dict[str, GMonogenicMap]:
    maps = {}
    for name, table in raw.items():
        where = f"maps.{name}"
        frame_name = _require(table, "frame", where, errors)
        hand = table.get("handedness", "right")
        comps = _parse_components(_require(table, "components", where, errors) or [],
                                  f"{where}.components", errors)
        if frame_name not in frames:
            errors.append(f"{where}: unknown frame {frame_name!r}")
            continue
        if comps is None:
            continue
        parsed = []
        ok = True
        for i, src in enumerate(comps):
            try:
                parsed.append(HoloFn.parse(src))
            except ParseError as exc:
                errors.append(f"{where}.components[{i}]: {exc}")
                ok = False
        if not ok:
            continue
        try:
            maps[name] = GMonogenicMap(frames[frame_name], tuple(parsed), hand)
        except ValueError as exc:
            errors.append(f"{where}: {exc}")
    return maps


def _build_fields(raw: dict, maps: dict, errors: list) -> dict:
    fields = {}
    for name, table in raw.items():
        where = f"fields.{name}"
        if "components" in table:
            comps = _parse_components(table["components"],
                                      f"{where}.components", errors)
            if comps is None:
                continue
            try:
                fields[name] = ExprField.parse(comps)
            except ParseError as exc:
                errors.append(f"{where}: {exc}")
        elif "constant" in table:
            entry = table["constant"]
            if not isinstance(entry, list) or len(entry) != 4:
                errors.append(f"{where}.constant: expected four [re, im] pairs")
                continue
            value = tuple(_as_complex(v, f"{where}.constant[{i}]", errors)
                          for i, v in enumerate(entry))
            fields[name] = ConstantField(value)
        elif "map" in table:
            ref = table["map"]
            if ref not in maps:
                errors.append(f"{where}: unknown map {ref!r}")
                continue
            fields[name] = MapField(maps[ref])
        else:
            errors.append(f"{where}: needs 'components', 'constant', or 'map'")
    return fields


def _build_curves(raw: dict, errors: list) -> dict[str, Curve3]:
    curves = {}
    for name, table in raw.items():
        where = f"curves.{name}"
        kind = table.get("type")
        try:
            if kind == "circle":
                center = _as_vec3(table.get("center", [0, 0, 0]),
                                  f"{where}.center", errors)
                radius = _as_float(table.get("radius", 1), f"{where}.radius", errors)
                normal = _as_vec3(table.get("normal", [0, 0, 1]),
                                  f"{where}.normal", errors)
                turns = int(table.get("turns", 1))
                curves[name] = circle3(center, radius, normal, turns=turns)
            elif kind == "polyline":
                pts_raw = _require(table, "points", where, errors)
                if pts_raw is None:
                    continue
                pts = [_as_vec3(p, f"{where}.points[{i}]", errors)
                       for i, p in enumerate(pts_raw)]
                curves[name] = polyline3(pts, closed=bool(table.get("closed", False)))
            elif kind == "parametric":
                exprs = [_require(table, key, where, errors) for key in "xyz"]
                if any(e is None for e in exprs):
                    continue
                curves[name] = parametric_curve3(
                    *exprs, closed=bool(table.get("closed", False)))
            else:
                errors.append(f"{where}: unknown curve type {kind!r}")
        except (ParseError, ValueError) as exc:
            errors.append(f"{where}: {exc}")
    return curves


def _build_surfaces(raw: dict, regions: dict, seed: int, errors: list) -> dict:
    surfaces = {}
    for name, table in raw.items():
        where = f"surfaces.{name}"
        kind = table.get("type")
        try:
            if kind == "patch":
                exprs = [_require(table, key, where, errors) for key in "xyz"]
                if any(e is None for e in exprs):
                    continue
                sign = float(table.get("orientation", 1))
                if sign not in (1.0, -1.0):
                    errors.append(f"{where}.orientation: expected 1 or -1")
                    continue
                patch = expr_patch(*exprs, sign=sign)
                check_patch_rank(Surface3((patch,)), seed)
                surfaces[name] = patch
            elif kind == "box_boundary":
                ref = _require(table, "region", where, errors)
                if ref is None:
                    continue
                if ref not in regions:
                    errors.append(f"{where}: unknown region {ref!r}")
                    continue
                from .geometry import box_boundary
                surfaces[name] = box_boundary(regions[ref])
            else:
                errors.append(f"{where}: unknown surface type {kind!r}")
        except (ParseError, ValueError) as exc:
            errors.append(f"{where}: {exc}")
    return surfaces


def _build_regions(raw: dict, errors: list) -> dict[str, Region3]:
    regions = {}
    for name, table in raw.items():
        where = f"regions.{name}"
        try:
            if "boxes" in table:
                boxes = []
                for i, box in enumerate(table["boxes"]):
                    lo = _as_vec3(_require(box, "lo", f"{where}.boxes[{i}]", errors)
                                  or [0, 0, 0], f"{where}.boxes[{i}].lo", errors)
                    hi = _as_vec3(_require(box, "hi", f"{where}.boxes[{i}]", errors)
                                  or [1, 1, 1], f"{where}.boxes[{i}].hi", errors)
                    boxes.append(Box3(lo, hi))
                regions[name] = Region3(tuple(boxes))
            else:
                lo = _as_vec3(_require(table, "lo", where, errors) or [0, 0, 0],
                              f"{where}.lo", errors)
                hi = _as_vec3(_require(table, "hi", where, errors) or [1, 1, 1],
                              f"{where}.hi", errors)
                regions[name] = Region3((Box3(lo, hi),))
        except ValueError as exc:
            errors.append(f"{where}: {exc}")
    return regions


# ------------------------------ check wiring -------------------------------

_NEEDS = {
    TheoremId.T1_CURVE: ("map", "curve"),
    TheoremId.T2_HOMOTOPY_INSTANCE: ("map", "curve_a", "curve_b"),
    TheoremId.LEMMA: ("map", "curve"),
    TheoremId.T3_FORMULA_RIGHT: ("map", "curve", "point"),
    TheoremId.T3_FORMULA_LEFT: ("map", "curve", "point"),
    TheoremId.STOKES_L: ("frame", "surface"),
    TheoremId.STOKES_R: ("frame", "surface"),
    TheoremId.GAUSS_OSTR_L: ("frame", "region"),
    TheoremId.GAUSS_OSTR_R: ("frame", "region"),
    TheoremId.T4_SURFACE: ("map", "region"),
    TheoremId.COROLLARY: ("map", "region"),
}

_CLOSED_CURVE_KEYS = {
    TheoremId.T1_CURVE: ("curve",),
    TheoremId.T2_HOMOTOPY_INSTANCE: ("curve_a", "curve_b"),
    TheoremId.T3_FORMULA_RIGHT: ("curve",),
    TheoremId.T3_FORMULA_LEFT: ("curve",),
}


def _check_hash(descriptor: dict) -> str:
    canon = json.dumps(descriptor, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _resolve_check(index: int, table: dict, cfg: RunConfig, raw: dict,
                   errors: list) -> CheckSpec | None:
    where = f"checks[{index}]"
    theorem_name = table.get("theorem")
    if theorem_name not in ALL_THEOREM_IDS:
        errors.append(f"{where}: unknown theorem {theorem_name!r}; "
                      f"valid ids: {', '.join(ALL_THEOREM_IDS)}")
        return None
    theorem = TheoremId(theorem_name)
    name = table.get("name", f"{theorem_name}#{index}")
    tol = _as_float(table.get("tol", cfg.default_tol), f"{where}.tol", errors)

    inputs: dict = {}
    descriptor: dict = {"theorem": theorem_name, "tol": tol, "refs": {}}
    pools = {"map": (cfg.maps, raw.get("maps", {})),
             "frame": (cfg.frames, raw.get("frames", {})),
             "curve": (cfg.curves, raw.get("curves", {})),
             "curve_a": (cfg.curves, raw.get("curves", {})),
             "curve_b": (cfg.curves, raw.get("curves", {})),
             "surface": (cfg.surfaces, raw.get("surfaces", {})),
             "region": (cfg.regions, raw.get("regions", {}))}

    ok = True
    for key in _NEEDS[theorem]:
        if key == "point":
            entry = _require(table, "point", where, errors)
            if entry is None:
                ok = False
                continue
            inputs["point"] = _as_vec3(entry, f"{where}.point", errors)
            descriptor["refs"]["point"] = list(inputs["point"])
            continue
        ref = _require(table, key, where, errors)
        if ref is None:
            ok = False
            continue
        pool, raw_pool = pools[key]
        if ref not in pool:
            errors.append(f"{where}.{key}: unknown name {ref!r}")
            ok = False
            continue
        inputs[key] = pool[ref]
        descriptor["refs"][key] = ref
        descriptor[key] = raw_pool.get(ref, {})

    # Stokes and Gauss-Ostrogradsky run on general fields or monogenic maps.
    if theorem in (TheoremId.STOKES_L, TheoremId.STOKES_R,
                   TheoremId.GAUSS_OSTR_L, TheoremId.GAUSS_OSTR_R):
        if "field" in table:
            ref = table["field"]
            if ref not in cfg.fields:
                errors.append(f"{where}.field: unknown name {ref!r}")
                ok = False
            else:
                inputs["field"] = cfg.fields[ref]
                descriptor["refs"]["field"] = ref
                descriptor["field"] = raw.get("fields", {}).get(ref, {})
        elif "map" in table:
            ref = table["map"]
            if ref not in cfg.maps:
                errors.append(f"{where}.map: unknown name {ref!r}")
                ok = False
            else:
                inputs["field"] = MapField(cfg.maps[ref])
                descriptor["refs"]["map"] = ref
                descriptor["map"] = raw.get("maps", {}).get(ref, {})
        else:
            errors.append(f"{where}: needs a 'field' or 'map' reference")
            ok = False

    if not ok:
        return None

    for key in _CLOSED_CURVE_KEYS.get(theorem, ()):
        if not inputs[key].closed:
            errors.append(f"{where}.{key}: theorem {theorem_name} needs a "
                          f"closed curve")
            ok = False
    if theorem == TheoremId.T3_FORMULA_RIGHT and inputs["map"].handedness != "right":
        errors.append(f"{where}: {theorem_name} needs a right-handed map")
        ok = False
    if theorem == TheoremId.T3_FORMULA_LEFT and inputs["map"].handedness != "left":
        errors.append(f"{where}: {theorem_name} needs a left-handed map")
        ok = False
    if theorem == TheoremId.STOKES_L or theorem == TheoremId.STOKES_R:
        if not isinstance(inputs.get("surface"), Patch):
            errors.append(f"{where}.surface: Stokes checks need a single "
                          f"'patch' surface")
            ok = False
    for key in ("map",):
        if key in inputs and not inputs[key].frame.is_valid:
            errors.append(f"{where}: map {descriptor['refs'][key]!r} uses an "
                          f"invalid frame")
            ok = False
    if "frame" in inputs and not inputs["frame"].is_valid:
        errors.append(f"{where}: frame {descriptor['refs']['frame']!r} is invalid")
        ok = False
    if not ok:
        return None
    return CheckSpec(name, theorem, tol, inputs, descriptor,
                     _check_hash(descriptor))


def load_config(path: str, seed: int = 0,
                tol_override: float | None = None) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    errors: list[str] = []
    quad_raw = raw.get("quadrature", {})
    try:
        quad = QuadratureSpec(
            nodes_per_segment=int(quad_raw.get("nodes_per_segment", 16)),
            tol=_as_float(quad_raw.get("tol", 1e-9), "quadrature.tol", errors),
            max_subdivisions=int(quad_raw.get("max_subdivisions", 12)),
            parallel=bool(quad_raw.get("parallel", False)))
    except ValueError as exc:
        errors.append(f"quadrature: {exc}")
        quad = QuadratureSpec()

    default_tol = _as_float(raw.get("defaults", {}).get("tol", THEOREM_TOL),
                            "defaults.tol", errors)
    if tol_override is not None:
        default_tol = tol_override
    output_path = raw.get("output", {}).get("path")

    cfg = RunConfig(quad=quad, default_tol=default_tol, seed=seed,
                    output_path=output_path,
                    frames=_build_frames(raw.get("frames", {}), errors),
                    maps={}, fields={}, curves={}, surfaces={}, regions={})
    cfg.maps = _build_maps(raw.get("maps", {}), cfg.frames, errors)
    cfg.fields = _build_fields(raw.get("fields", {}), cfg.maps, errors)
    cfg.curves = _build_curves(raw.get("curves", {}), errors)
    cfg.regions = _build_regions(raw.get("regions", {}), errors)
    cfg.surfaces = _build_surfaces(raw.get("surfaces", {}), cfg.regions,
                                   seed, errors)

    checks_raw = raw.get("checks", [])
    if not checks_raw:
        errors.append("config defines no checks")
    for i, table in enumerate(checks_raw):
        if tol_override is not None:
            table = dict(table)
            table["tol"] = tol_override
        spec = _resolve_check(i, table, cfg, raw, errors)
        if spec is not None:
            cfg.checks.append(spec)

    if errors:
        raise ConfigError("\n".join(errors))
    return cfg


# ------------------------------- execution ---------------------------------

def execute_check(check: CheckSpec, quad: QuadratureSpec) -> dict:
    """Run one check; runtime verification errors become failed rows."""
    row = {"name": check.name, "theorem_id": check.theorem.value,
           "tol": check.tol, "input_hash": check.input_hash,
           "inputs": check.descriptor, "residual": None,
           "passed": False, "error": None, "metadata": {}}
    inputs = check.inputs
    geometry = {k: v for k, v in check.descriptor.items()
                if k not in ("theorem", "tol", "refs")}
    started = time.perf_counter()
    try:
        t = check.theorem
        if t == TheoremId.T1_CURVE:
            report = verify_cauchy_curve(inputs["map"], inputs["curve"], quad,
                                         check.tol, geometry)
        elif t == TheoremId.T2_HOMOTOPY_INSTANCE:
            report = verify_homotopy_pair(inputs["map"], inputs["curve_a"],
                                          inputs["curve_b"], quad, check.tol,
                                          geometry)
        elif t == TheoremId.LEMMA:
            report = verify_lemma(inputs["map"], inputs["curve"], quad,
                                  check.tol, geometry)
        elif t in (TheoremId.T3_FORMULA_RIGHT, TheoremId.T3_FORMULA_LEFT):
            report = verify_cauchy_formula(inputs["map"], inputs["point"],
                                           inputs["curve"], quad, check.tol,
                                           geometry=geometry)
        elif t in (TheoremId.STOKES_L, TheoremId.STOKES_R):
            order = "left" if t == TheoremId.STOKES_L else "right"
            report = verify_stokes(inputs["field"], inputs["surface"],
                                   inputs["frame"], quad, check.tol, order,
                                   geometry)
        elif t in (TheoremId.GAUSS_OSTR_L, TheoremId.GAUSS_OSTR_R):
            order = "left" if t == TheoremId.GAUSS_OSTR_L else "right"
            report = verify_gauss_ostr(inputs["field"], inputs["region"],
                                       inputs["frame"], quad, check.tol, order,
                                       geometry)
        elif t == TheoremId.T4_SURFACE:
            report = verify_surface_theorem(inputs["map"], inputs["region"],
                                            quad, check.tol, geometry)
        else:
            report = verify_corollary(inputs["map"], inputs["region"], quad,
                                      check.tol, geometry)
    except (NoConvergence, PoleHit, NotEmbracing, QuatmonoError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        row["metadata"] = {"wall_time_s": time.perf_counter() - started}
        return row
    row["residual"] = report.residual
    row["passed"] = report.passed
    row["metadata"] = report.metadata
    return row


def run_checks(cfg: RunConfig, only: list[str] | None = None) -> dict:
    """Execute selected checks and assemble the deterministic report."""
    checks = cfg.checks
    if only:
        unknown = [t for t in only if t not in ALL_THEOREM_IDS]
        if unknown:
            raise ConfigError(f"unknown theorem ids in --only: "
                              f"{', '.join(unknown)}")
        checks = [c for c in checks if c.theorem.value in only]
        if not checks:
            raise ConfigError("no checks match the --only selection")
    rows = [execute_check(c, cfg.quad) for c in checks]
    rows.sort(key=lambda r: (r["theorem_id"], r["input_hash"]))
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "seed": cfg.seed,
        "quadrature": {"nodes_per_segment": cfg.quad.nodes_per_segment,
                       "tol": cfg.quad.tol,
                       "max_subdivisions": cfg.quad.max_subdivisions,
                       "parallel": cfg.quad.parallel},
        "all_passed": all(r["passed"] for r in rows),
        "checks": rows,
    }
