"""Census export records and the golden-table verification checks shared by the CLI and tests."""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import golden
from .hyperplanes import brute_force_hyperplanes, classify_hyperplanes
from .lagrangian import generator_count, lgr_census
from .segre import build_segre
from .symmetry import (
    group_elements,
    hyperbolic_point_count,
    hyperplane_orbits,
    quadric_census,
    stabilizer_generators,
    weight_distance_rule,
)
from .veldkamp import (
    blow_up_report,
    classify_veldkamp_lines,
    count_ordinary_lines,
    vl_core_points,
    vl_provenance,
    verify_pg_structure,
)

SCHEMA = "binsegre.census/1"
REPORT_SCHEMA = "binsegre.report/1"

MAX_N = {"hyperplanes": 4, "vlines": 3}


# ------------------------------------------------------------------ census


def hyperplane_records(n: int) -> list[dict]:
    census = classify_hyperplanes(build_segre(n))
    prov = vl_provenance(n) if n >= 2 else {}
    out = []
    for e in census.entries:
        s = e.signature
        out.append({
            "type": e.label,
            "points": s.n_points,
            "lines": s.n_lines,
            "orders": list(s.order_histogram),
            "sub_profile": s.profile_dict() if n >= 2 else {},
            "cardinality": e.cardinality,
            "weight": e.weight,
            "on_quadric": e.on_quadric,
            "vl_types": sorted(prov.get(e.label, ()), key=vl_sort_key),
        })
    return out


def vline_records(n: int) -> list[dict]:
    census = classify_veldkamp_lines(build_segre(n))
    return [{
        "type": e.label,
        "core_points": e.signature.core_points,
        "core_lines": e.signature.core_lines,
        "core_pattern": e.signature.core_line_pattern,
        "composition": e.signature.composition_dict(),
        "cardinality": e.cardinality,
    } for e in census.entries]


def vl_sort_key(label: str):
    return (0, int(label)) if label.isdigit() else (1, len(label), label)


def census_records(n: int, target: str) -> list[dict]:
    if target not in MAX_N:
        raise ValueError(f"unknown target {target!r}")
    if not 1 <= n <= MAX_N[target]:
        raise ValueError(f"{target} census needs 1 <= n <= {MAX_N[target]}")
    return hyperplane_records(n) if target == "hyperplanes" else vline_records(n)


def census_defects(n: int, target: str) -> list[str]:
    v = build_segre(n)
    census = classify_hyperplanes(v) if target == "hyperplanes" else classify_veldkamp_lines(v)
    return list(census.defects)


def to_json(n: int, target: str, records: list[dict]) -> str:
    doc = {"schema": SCHEMA, "n": n, "target": target,
           "total": sum(r["cardinality"] for r in records), "rows": records}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _flat(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}={v}" for k, v in value.items())
    if isinstance(value, list):
        return ";".join(str(x) for x in value)
    if value is None:
        return ""
    return str(value)


def to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    if not records:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    cols = list(records[0])
    w.writerow(cols)
    for r in records:
        w.writerow([_flat(r[c]) for c in cols])
    return buf.getvalue()


# ------------------------------------------------------------------ checks


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual), "passed": self.passed, "detail": self.detail}


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(y) for y in x), key=str)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def check_equal(name: str, expected, actual, detail: str = "") -> Check:
    return Check(name, expected, actual, expected == actual, detail)


def _defects(name: str, defects: list[str]) -> Check:
    return Check(name, [], list(defects), not defects)


def check_segre() -> list[Check]:
    out = []
    for n, want in ((2, (9, 6)), (3, (27, 27)), (4, (81, 108))):
        v = build_segre(n)
        out.append(check_equal(f"S_({n}) points/lines", want, (v.n_points, v.n_lines)))
    return out


def _hyperplane_table_checks(tag: str, n: int, rows: tuple[dict, ...], cols: tuple[str, ...]) -> list[Check]:
    """Compare the hyperplane census of S_(n) against the golden rows, column by column."""
    got = {r["type"]: r for r in hyperplane_records(n)}
    out = [check_equal(f"{tag} type count", len(rows), len(got))]
    for col in cols:
        want = {r["type"]: _golden_value(r, col) for r in rows}
        have = {t: _census_value(got[t], col) if t in got else None for t in want}
        out.append(check_equal(f"{tag} column {col}", want, have))
    out.append(check_equal(f"{tag} total", golden.TABLE_TOTALS.get(tag) or sum(r["cardinality"] for r in rows),
                   sum(r["cardinality"] for r in got.values())))
    out.append(_defects(f"{tag} census defects", census_defects(n, "hyperplanes")))
    return out


def _golden_value(r: dict, col: str):
    if col == "vl":
        return set(r["vl"])
    if col == "orders":
        return tuple(r["orders"])
    if col == "profile":
        return dict(r["profile"])
    return r[col]


def _census_value(r: dict, col: str):
    return {
        "points": r["points"],
        "lines": r["lines"],
        "orders": tuple(r["orders"]),
        "profile": r["sub_profile"],
        "vl": set(r["vl_types"]),
        "cardinality": r["cardinality"],
        "weight": r["weight"],
    }[col]


def check_t1() -> list[Check]:
    out = _hyperplane_table_checks("T1", 2, golden.load_table("T1"),
                                   ("points", "lines", "orders", "profile", "vl", "cardinality"))
    # independent oracle: every subset of the 9 points
    v = build_segre(2)
    brute = brute_force_hyperplanes(v)
    out.append(check_equal("T1 brute-force hyperplane count", 15, len(brute)))
    table_masks = set()
    for f in range(1, 16):
        mask = 0
        for i, e in enumerate(v.embeddings.tolist()):
            if (int(e) & f).bit_count() % 2 == 0:
                mask |= 1 << i
        table_masks.add(mask)
    out.append(check_equal("T1 brute force equals functional hyperplanes", table_masks, set(brute)))
    return out


def _vl_table_checks(tag: str, n: int) -> list[Check]:
    rows = golden.load_table(tag)
    got = vline_records(n)

    def key(r):
        return (r["core_points"], r["core_lines"], tuple(sorted(r["composition"].items())), r["cardinality"])

    out = [
        check_equal(f"{tag} type count", len(rows), len(got)),
        check_equal(f"{tag} total", golden.TABLE_TOTALS[tag], sum(r["cardinality"] for r in got)),
        check_equal(f"{tag} total equals PG line count", count_ordinary_lines(n), sum(r["cardinality"] for r in got)),
        check_equal(f"{tag} rows (core pts, core lines, composition, size)",
            Counter(key(r) for r in rows), Counter(key(r) for r in got)),
        check_equal(f"{tag} labelled rows", {r["type"]: key(r) for r in rows}, {r["type"]: key(r) for r in got}),
        _defects(f"{tag} census defects", census_defects(n, "vlines")),
    ]
    return out


def check_t2() -> list[Check]:
    return _vl_table_checks("T2", 2)


def check_t3() -> list[Check]:
    return _hyperplane_table_checks("T3", 3, golden.load_table("T3"),
                                    ("points", "lines", "orders", "profile", "vl", "cardinality", "weight"))


def check_t4() -> list[Check]:
    out = _vl_table_checks("T4", 3)
    got = {r["type"]: r for r in vline_records(3)}
    # rows 16 and 17 print identical data; they must still be two separate orbits
    pair = [got.get("16"), got.get("17")]
    out.append(Check("T4 rows 16/17 are distinct orbits of size 324",
                     [324, 324], [p["cardinality"] if p else None for p in pair],
                     all(p and p["cardinality"] == 324 for p in pair)))
    for a, b, sizes in (("10", "11", (18, 108)), ("35", "36", (216, 324))):
        out.append(check_equal(f"T4 rows {a}/{b} split by orbit size", sizes,
                       (got[a]["cardinality"] if a in got else None, got[b]["cardinality"] if b in got else None)))
    return out


def check_t5() -> list[Check]:
    out = _hyperplane_table_checks("T5", 4, golden.load_table("T5"),
                                   ("points", "lines", "orders", "profile", "vl", "cardinality", "weight"))
    got = {r["type"]: r for r in hyperplane_records(4)}
    out.append(check_equal("T5 max weight at type 29", (6, ["29"]),
                   (max(r["weight"] for r in got.values()),
                    [t for t, r in got.items() if r["weight"] == 6])))
    return out


def check_t6() -> list[Check]:
    rows = golden.load_table("T6")
    rep = quadric_census(4)
    want = {r["type"]: r["cardinality"] for r in rows}
    have = {t: on for t, (on, _) in rep.per_type.items() if on}
    out = [
        check_equal("T6 on-quadric types and counts", want, have),
        check_equal("T6 total", golden.TABLE_TOTALS["T6"], rep.on_total),
        check_equal("T6 on-quadric types are whole types", [], rep.defects),
    ]
    out.append(parity_rule_check())
    return out


def parity_rule_check() -> Check:
    """A type of S_(4) is on the quadric iff every VL type it projects to has an odd core."""
    cores = vl_core_points(3)
    prov = vl_provenance(4)
    census = classify_hyperplanes(build_segre(4))
    bad = []
    for e in census.entries:
        odd = all(cores[lab] % 2 == 1 for lab in prov[e.label])
        if odd != bool(e.on_quadric):
            bad.append(e.label)
    return Check("odd-core parity rule over all 29 types", [], bad, not bad and len(census.entries) == 29)


def check_t7() -> list[Check]:
    rows = golden.load_table("T7")
    rep = lgr_census(4)
    want = {r["type"]: r["cardinality"] for r in rows}
    out = [
        check_equal("T7 generator count", golden.TABLE_TOTALS["T7"], rep.generator_count),
        check_equal("T7 image histogram", want, rep.type_histogram),
        check_equal("T7 image on quadric", rep.image_distinct, rep.on_quadric),
        check_equal("T7 spinor map injective", True, rep.injective),
    ]
    got = {r["type"]: r for r in hyperplane_records(4)}
    # characterization: no H3/H5 sub-Segre sections, points of maximal order present
    chosen = {t for t, r in got.items()
              if r["on_quadric"] and r["sub_profile"].get("H3", 0) == 0
              and r["sub_profile"].get("H5", 0) == 0 and r["orders"][-1] > 0}
    out.append(check_equal("T7 characterization selects the image types", set(want), chosen))
    return out


def check_quadric() -> list[Check]:
    out = []
    expected_types = {2: {"1"}, 3: {"1", "2", "4"}, 4: {r["type"] for r in golden.load_table("T6")}}
    for n in (2, 3, 4):
        rep = quadric_census(n)
        out.append(check_equal(f"quadric n={n} fixed-space dimension", 1, rep.fixed_space_dim))
        out.append(check_equal(f"quadric n={n} zero-set size", hyperbolic_point_count(1 << n), rep.quadric_points))
        out.append(check_equal(f"quadric n={n} nondegenerate", True, rep.nondegenerate))
        out.append(check_equal(f"quadric n={n} on-quadric types", expected_types[n], set(rep.types_on_quadric)))
        out.append(check_equal(f"quadric n={n} per-type counts sum", rep.quadric_points, rep.on_total))
        out.append(_defects(f"quadric n={n} defects", rep.defects))
    out.append(parity_rule_check())
    return out


def check_lgr() -> list[Check]:
    out = []
    for n in (2, 3, 4):
        rep = lgr_census(n)
        out.append(check_equal(f"lgr n={n} generator count", generator_count(n), rep.generator_count))
        out.append(check_equal(f"lgr n={n} spinor map injective", True, rep.injective))
        out.append(_defects(f"lgr n={n} defects", rep.defects))
    rep3 = lgr_census(3)
    out.append(check_equal("lgr n=3 image is the invariant quadric", True, rep3.image_is_quadric))
    out.append(check_equal("lgr n=3 type histogram", {"1": 27, "2": 54, "4": 54}, rep3.type_histogram))
    out.extend(c for c in check_t7() if c.name != "T7 generator count")
    return out


def check_blowup() -> list[Check]:
    out = []
    for n in (2, 3, 4):
        rep = blow_up_report(n)
        out.append(check_equal(f"blow-up n={n} 6*ordinary + 3*extraordinary",
                       rep.hyperplanes, 6 * rep.ordinary_lines + 3 * rep.extraordinary_lines))
        out.append(check_equal(f"blow-up n={n} hits every hyperplane exactly once", True, rep.partition_ok))
        out.append(check_equal(f"blow-up n={n} round trip", True, rep.round_trip_ok))
        out.append(check_equal(f"blow-up n={n} type multiplicities", True, rep.multiplicity_ok))
        out.append(_defects(f"blow-up n={n} defects", rep.defects))
    for tag, n in (("T1", 2), ("T3", 3), ("T5", 4)):
        want = {r["type"]: set(r["vl"]) for r in golden.load_table(tag)}
        have = {t: set(s) for t, s in vl_provenance(n).items()}
        out.append(check_equal(f"blow-up provenance matches {tag} VL column", want, have))
    return out


def check_pg() -> list[Check]:
    out = []
    for n in (2, 3, 4):
        rep = verify_pg_structure(build_segre(n))
        pts = (1 << (1 << n)) - 1
        out.append(check_equal(f"PG n={n} points", pts, rep.points))
        out.append(check_equal(f"PG n={n} lines", pts * (pts - 1) // 6, rep.lines))
        out.append(check_equal(f"PG n={n} functional map injective", True, rep.injective))
        out.append(check_equal(f"PG n={n} every zero set is a hyperplane", True, rep.axiom_ok))
        out.append(check_equal(f"PG n={n} Veldkamp sum is XOR", True, rep.xor_ok,
                       f"{rep.pairs_checked} pairs"))
        if rep.surjective is not None:
            out.append(check_equal(f"PG n={n} every hyperplane has a functional", True, rep.surjective))
    return out


def check_weights() -> list[Check]:
    rep = weight_distance_rule(4)
    out = []
    for d, t in ((2, "2"), (3, "3"), (4, "4")):
        out.append(check_equal(f"singular pairs at distance {d} sum to type {t}", {t},
                       set(rep.by_distance.get(d, {}))))
    out.append(check_equal("singular pairs examined", 81 * 80 // 2,
                   sum(sum(b.values()) for b in rep.by_distance.values())))
    return out


def check_orbits() -> list[Check]:
    """Signature classes must coincide with stabilizer orbits."""
    out = []
    for n in (1, 2, 3, 4):
        census = classify_hyperplanes(build_segre(n))
        comp, orbits = hyperplane_orbits(n)
        sig, orb = census.labels.tolist(), comp.tolist()
        same = len(set(zip(sig, orb))) == len(set(sig)) == len(set(orb))
        out.append(Check(f"n={n} signature partition equals orbit partition",
                         len(census.entries), len(orbits), same))
    for n in (1, 2, 3, 4):
        order = len(group_elements(stabilizer_generators(n)))
        out.append(check_equal(f"n={n} stabilizer order", 6**n * math.factorial(n), order))
    return out


CHECKS: dict[str, Callable[[], list[Check]]] = {
    "segre": check_segre,
    "t1": check_t1,
    "t2": check_t2,
    "t3": check_t3,
    "t4": check_t4,
    "t5": check_t5,
    "t6": check_t6,
    "t7": check_t7,
    "quadric": check_quadric,
    "lgr": check_lgr,
    "blowup": check_blowup,
    "pg": check_pg,
    "weights": check_weights,
    "orbits": check_orbits,
}

SCOPES = ("all", *CHECKS)


def run_scope(scope: str) -> list[Check]:
    if scope not in CHECKS:
        raise KeyError(scope)
    return CHECKS[scope]()


# ------------------------------------------------------------------ run report


@dataclass
class RunReport:
    command: str
    parameters: dict
    wall_time: float = 0.0
    checks: list[Check] = field(default_factory=list)
    defects: list[str] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)
    data: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.defects and all(c.passed for c in self.checks)

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        doc = {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "parameters": self.parameters,
            "wall_time": round(self.wall_time, 3),
            "outcome": self.outcome,
            "checks": [c.to_dict() for c in self.checks],
            "defects": self.defects,
            "artifacts": self.artifacts,
        }
        if self.data is not None:
            doc["data"] = _jsonable(self.data)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
