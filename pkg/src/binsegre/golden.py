"""Loaders for the transcribed reference tables shipped under ``golden/``."""

from __future__ import annotations

import csv
import re
from functools import lru_cache
from importlib import resources

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7")

# stated totals each table is checked against
TABLE_TOTALS = {"T1": 15, "T2": 35, "T3": 255, "T4": 10795, "T5": 65535, "T6": 32895, "T7": 2295}

# Table 1 names the two Veldkamp lines of S_(1) instead of numbering them
_T1_VL = {"ext": "I", "ord": "1"}


def _read(table_id: str) -> list[dict[str, str]]:
    name = f"table{table_id[1:]}.csv"
    text = resources.files(__package__).joinpath("golden", name).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))


def _leading_int(s: str) -> int:
    m = re.match(r"\s*(\d+)", s)
    if not m:
        raise ValueError(f"no count in {s!r}")
    return int(m.group(1))


def parse_vl(cell: str) -> frozenset[str]:
    out = set()
    for part in cell.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*-+\s*(\d+)", part)
        if m:
            out.update(str(k) for k in range(int(m.group(1)), int(m.group(2)) + 1))
        else:
            out.add(_T1_VL.get(part, part))
    return frozenset(out)


def _hyperplane_row(raw: dict[str, str]) -> dict:
    orders = []
    k = 0
    while f"ord{k}" in raw:
        orders.append(int(raw[f"ord{k}"]))
        k += 1
    profile = {"D": int(raw["D"])}
    k = 1
    while f"H{k}" in raw:
        profile[f"H{k}"] = int(raw[f"H{k}"])
        k += 1
    return {
        "type": raw["type"],
        "points": int(raw["points"]),
        "lines": int(raw["lines"]),
        "orders": tuple(orders),
        "profile": profile,
        "vl": parse_vl(raw["vl"]),
        "cardinality": int(raw["crd"]),
        "weight": int(raw["w"]) if raw.get("w") else None,
        "bs": int(raw["bs"]) if raw.get("bs") else None,
    }


def _vl_row(raw: dict[str, str]) -> dict:
    comp = {}
    k = 1
    while f"H{k}" in raw:
        c = int(raw[f"H{k}"])
        if c:
            comp[f"H{k}"] = c
        k += 1
    return {
        "type": raw["type"],
        "core_points": _leading_int(raw["core_points"]),
        "core_lines": _leading_int(raw["core_lines"]),
        "core_points_note": raw["core_points"].strip(),
        "core_lines_note": raw["core_lines"].strip(),
        "composition": comp,
        "cardinality": int(raw["crd"]),
    }


@lru_cache(maxsize=None)
def load_table(table_id: str) -> tuple[dict, ...]:
    if table_id not in TABLE_IDS:
        raise KeyError(table_id)
    raw = _read(table_id)
    if table_id in ("T2", "T4"):
        return tuple(_vl_row(r) for r in raw)
    return tuple(_hyperplane_row(r) for r in raw)


def hyperplane_rows(n: int) -> tuple[dict, ...] | None:
    return {2: load_table("T1"), 3: load_table("T3"), 4: load_table("T5")}.get(n) if n in (2, 3, 4) else None


def vl_rows(n: int) -> tuple[dict, ...] | None:
    return {2: load_table("T2"), 3: load_table("T4")}.get(n)
