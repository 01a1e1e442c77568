import importlib
import json

import pytest

from conftest import BUNDLED, verify_report
from starbaer.catalog import BY_ID, CATALOG, FINDING, RADICAL, THEOREM, resolve_ids

# p pass, F fail, n finding, s skipped; columns follow RINGS
RINGS = ["m2z2", "m2z2xm2z3", "m2z3xm2z3", "m2z4", "rng02", "swapz3", "z12", "z4", "z5", "z6"]
FROZEN = {
    "EX2.CENTRAL-PROJ": "sspsssssss",
    "EX2.COVERS": "sspsssssss",
    "EX5.GC-E11": "psssssssss",
    "EX5.NONRESTRICTED": "ssspssssss",
    "EX5.SCALAR-GCS": "nsssssssss",
    "EX6.TRACE-ZERO": "snssssssss",
    "P2.ANN-INTERSECT": "ppppsspppp",
    "P2.CHAR-ANN": "pppppppppp",
    "P2.COMPLETE-QB": "pppppppppp",
    "P2.GC-CENTRAL-COMMUTE": "pppppppppp",
    "P2.GC-MONOTONE": "pppppppppp",
    "P2.GC-STAR-COMM": "sssssspppp",
    "P2.GCEXIST": "ppppsspppp",
    "P2.LATTICE": "FFFssssspp",
    "P3.EMBED": "pssspsssps",
    "P3.GC-LIFT": "pssspsssps",
    "P3.UPPERBOUND": "pppppspppp",
    "P3.WEAKLY-QUASIPROPER": "pppppspppp",
    "P3.WEAKLY-UNITY": "pppppppppp",
    "P4.ORTHDECOMP": "FssFsspppp",
    "P4.PARA-CENTRAL": "ppppsspppp",
    "P4.PARA-CHAR": "ppppsspppp",
    "P4.PC": "pFFpsspppp",
    "P4.POSITION-GC": "FFFFsspppp",
    "P4.VERYORTH": "ppppsspppp",
    "P5.BMAX": "pppFssFFpp",
    "P5.GC-INEQ": "ppppsspppp",
    "P5.GCSET-PRIME": "ppppsspppp",
    "P5.GEN-GCS": "ppppsspppp",
    "P5.POWER-IN": "ppppsspppp",
    "P5.PRIME-USUAL": "ppppsspppp",
    "P5.SEPARATION": "ppppsspppp",
    "P5.SUMPROD-GCS": "ppppsspppp",
    "P6.ANN-GCS": "ppppsspppp",
    "P6.ANN-KERNEL": "pppFssFFpp",
    "P6.BASIS": "ppppsspppp",
    "P6.COMPACT-PHI": "ppppsspppp",
    "P6.GC-PRODUCT-IDEAL": "ppppsspppp",
    "P6.GELFAND-ISO": "pppnssnnpp",
    "P6.GEN-AC": "ppppsspppp",
    "P6.GO-FORM": "ppppsspppp",
    "P6.GO-PRIME": "ppppsspppp",
    "P6.HAUSDORFF": "ppppsspppp",
    "P6.KH-IDENT": "pppFssFFpp",
    "P6.ORTH-LEMMA": "FFFnsspppp",
    "P6.SECTION-POWER": "ppppsspppp",
}
CODE = {"pass": "p", "fail": "F", "finding": "n", "skipped": "s"}


def _report(name):
    code, text = verify_report(name)
    return code, json.loads(text)


def test_every_id_is_catalogued_once():
    ids = [e.pid for e in CATALOG]
    assert len(ids) == len(set(ids)) == 46
    assert set(ids) == set(FROZEN)


def test_operations_resolve():
    for e in CATALOG:
        module, attr = e.operation.split(".")
        assert hasattr(importlib.import_module(f"starbaer.{module}"), attr), e.pid
        assert e.expected in (THEOREM, FINDING, RADICAL)


def test_resolve_ids():
    assert set(resolve_ids("all")) == set(BY_ID)
    assert list(resolve_ids("P2.LATTICE,P4.PC")) == ["P2.LATTICE", "P4.PC"]
    with pytest.raises(KeyError):
        resolve_ids("P9.NOPE")


def test_bundled_rings_listed():
    assert BUNDLED == RINGS


@pytest.mark.parametrize("name", RINGS)
def test_frozen_statuses(name):
    _, rep = _report(name)
    col = RINGS.index(name)
    got = {pid: CODE[r["status"]] for pid, r in rep["results"].items()}
    assert got == {pid: s[col] for pid, s in FROZEN.items()}


@pytest.mark.parametrize("name", RINGS)
def test_skip_reasons_are_machine_readable(name):
    _, rep = _report(name)
    for pid, r in rep["results"].items():
        if r["status"] != "skipped":
            continue
        why = r["reason"]
        assert why["reason"] in ("requires", "hypothesis", "limit"), pid
        if why["reason"] == "requires":
            assert why["flags"] and all(f in rep["classification"]["flags"] for f in why["flags"])
        elif why["reason"] == "limit":
            assert why["elements"] > why["limit"] or "detail" in why
        else:
            assert why["detail"]


@pytest.mark.parametrize("name", RINGS)
def test_failures_carry_witnesses(name):
    code, rep = _report(name)
    failed = [pid for pid, r in rep["results"].items() if r["status"] == "fail"]
    for pid in failed:
        assert rep["results"][pid]["witness"], pid
        assert rep["results"][pid]["expected"] == THEOREM
    assert rep["summary"]["theoremFailures"] == sorted(failed)
    assert code == (1 if failed else 0)


def test_findings_are_radical_or_flagged():
    for name in RINGS:
        _, rep = _report(name)
        for pid, r in rep["results"].items():
            if r["status"] == "finding":
                assert BY_ID[pid].expected in (FINDING, RADICAL)
                assert "data" in r
