"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criterion 10's five-percentage-point tolerance is asserted exactly as
stated; at q <= 5 the Frobenius-statistics error is of order q^(-1/2),
which empirically exceeds it, so that test documents an honest failure
(see the nonzero-density half, which holds exactly).
"""

import itertools
import json
import math
import time
from fractions import Fraction

import pytest

from hypohff.ffield import embedding, make_field
from hypohff.polyring import (Poly, count_monic_irreducible, is_irreducible,
                              monic_polys)
from hypohff.polyparse import format_elem, format_poly
from hypohff.bivar import RPoly, squarefree_part, square_classes_independent, \
    sym_discriminant
from hypohff.census import CensusSpec, run_census, derive_setup
from hypohff.wreath import predict_density
from hypohff.cli import main

# frozen after the first verified run: census --p 101 --n 3 --f X --f X+1
TWIN_CUBIC_HITS_Q101 = 113322


def _report(num: str, ok: bool, detail: str):
    print(f"[ACCEPT] criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num}: {detail}"


def _run_json(capsys, argv):
    t0 = time.monotonic()
    code = main(argv)
    elapsed = time.monotonic() - t0
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out), elapsed, out


def test_criterion_01_single_linear_census(capsys):
    doc, elapsed, _ = _run_json(capsys, [
        "census", "--p", "101", "--k", "1", "--n", "2", "--f", "X",
        "--deterministic", "--threads", "1"])
    hits = int(doc["counts"]["hits"])
    oracle = count_monic_irreducible(make_field(101, 1), 2)
    dev = abs(doc["prediction"]["normalized_deviation"])
    ok = (hits == 5050 == oracle and doc["prediction"]["density"] == "1/2"
          and abs(dev - 0.0497) < 0.001 and dev <= 5 and elapsed < 5)
    _report("01", ok, f"hits={hits} dev={dev:.4f} time={elapsed:.2f}s")


def test_criterion_02_twin_cubic_census(capsys):
    doc, elapsed, _ = _run_json(capsys, [
        "census", "--p", "101", "--k", "1", "--n", "3", "--f", "X",
        "--f", "X + 1", "--deterministic", "--threads", "4"])
    hits = int(doc["counts"]["hits"])
    dev = abs(doc["prediction"]["normalized_deviation"])
    ok = (dev <= 5 and hits == TWIN_CUBIC_HITS_Q101
          and doc["prediction"]["density"] == "1/9" and elapsed < 60)
    _report("02", ok, f"hits={hits} dev={dev:.4f} time={elapsed:.2f}s")


def test_criterion_03_char2_odd_substitution(capsys):
    t0 = time.monotonic()
    doc, e1, _ = _run_json(capsys, [
        "census", "--p", "2", "--k", "6", "--n", "3", "--f", "X",
        "--deterministic", "--threads", "1"])
    dev1 = abs(doc["prediction"]["normalized_deviation"])
    f64 = make_field(2, 6)
    quad = next(f for f in monic_polys(f64, 2) if is_irreducible(f))
    doc2, e2, _ = _run_json(capsys, [
        "census", "--p", "2", "--k", "6", "--n", "3",
        "--f", format_poly(quad), "--deterministic", "--threads", "1"])
    dev2 = abs(doc2["prediction"]["normalized_deviation"])
    elapsed = time.monotonic() - t0
    ok = (dev1 <= 5 and dev2 <= 5
          and doc2["setup"]["orbit_sizes"] == [2] and elapsed < 30)
    _report("03", ok,
            f"dev(X)={dev1:.4f} dev({format_poly(quad)})={dev2:.4f} time={elapsed:.2f}s")


def test_criterion_04_transitive_count_identity(capsys):
    doc, elapsed, _ = _run_json(capsys, [
        "wreath", "--max-n", "4", "--max-nu", "4", "--guard", "1000000",
        "--deterministic"])
    recs = doc["records"]
    ok = (doc["all_match"] is True and len(recs) >= 40
          and all(r["count"] == r["formula"] and r["conjugation_orbits"] == 1
                  for r in recs)
          and elapsed < 60)
    _report("04", ok, f"{len(recs)} setups verified, time={elapsed:.2f}s")


def test_criterion_05_composite_value_family(capsys):
    doc, elapsed, _ = _run_json(capsys, [
        "swan", "--deg-bound", "10", "--deterministic"])
    ok = (doc["candidates"] == "2046" and doc["counterexamples"] == []
          and doc["summary"] == "0 counterexamples" and elapsed < 10)
    _report("05", ok, f"candidates={doc['candidates']} time={elapsed:.2f}s")


def test_criterion_06_symbolic_discriminants():
    f3 = make_field(3, 1)
    T3 = Poly(f3, (0, 1))
    h = RPoly(f3, [T3, 0, 2, 1])  # X^3 + 2 X^2 + T
    d = sym_discriminant(h)
    ok1 = d in (T3, Poly(f3, (0, 2)))  # T up to a unit of F_3
    f5 = make_field(5, 1)
    T5 = Poly(f5, (0, 1))
    h2 = RPoly(f5, [-T5, 0, 0, 0, 1])  # X^4 - T
    cls = squarefree_part(sym_discriminant(h2))
    ok2 = cls.rep == T5
    _report("06", ok1 and ok2,
            f"disc(X^3+2X^2+T)={format_poly(d, var='T')}, sqfree part of disc(X^4-T)=T")


def test_criterion_07_square_class_independence():
    f7 = make_field(7, 1)
    shifts = [squarefree_part(Poly.from_elems(f7, [-a, 1])) for a in (0, 1, 2)]
    ok1 = square_classes_independent(shifts)
    ok2 = not square_classes_independent([shifts[0], shifts[0]])
    ok3 = not square_classes_independent([shifts[1], shifts[1], shifts[2]])
    _report("07", ok1 and ok2 and ok3,
            "distinct linear shifts independent; repeated classes dependent")


def test_criterion_08_parity_law(capsys):
    t0 = time.monotonic()
    doc1, _, _ = _run_json(capsys, [
        "disc", "--p", "2", "--k", "1", "--parity", "--deg-bound", "8",
        "--samples", "300", "--deterministic"])
    doc2, _, _ = _run_json(capsys, [
        "disc", "--p", "2", "--k", "2", "--parity", "--deg-bound", "6",
        "--samples", "300", "--deterministic"])
    elapsed = time.monotonic() - t0
    ok = (doc1["violations"] == [] and doc1["checked"] == 300
          and doc2["violations"] == [] and doc2["checked"] == 300
          and elapsed < 20)
    _report("08", ok, f"0 violations in 600 samples, time={elapsed:.2f}s")


def test_criterion_09_quadratic_shift_dependence(capsys):
    f64 = make_field(2, 6)
    f4 = make_field(2, 2)
    w = embedding(f4, f64)(f4.from_coeffs([0, 1]))
    omega = [f64.zero, f64.one, w, w + f64.one]
    lits = [format_elem(x) for x in omega]
    t0 = time.monotonic()
    dep, _, _ = _run_json(capsys, [
        "corr", "--p", "2", "--k", "6",
        "--omega", lits[0], "--omega", lits[1], "--omega", lits[2],
        "--omega", lits[3], "--deterministic"])
    ctrl, _, _ = _run_json(capsys, [
        "corr", "--p", "2", "--k", "6", "--omega", "0", "--omega", "1",
        "--deterministic"])
    elapsed = time.monotonic() - t0
    ok = (dep["even_sum_ok"] is False and dep["relative_deviation"] > 0.25
          and ctrl["even_sum_ok"] is True and ctrl["relative_deviation"] <= 0.20
          and int(dep["total"]) == 4096 and elapsed < 5)
    _report("09", ok,
            f"dependent dev={dep['relative_deviation']:.3f} "
            f"control dev={ctrl['relative_deviation']:.3f} time={elapsed:.2f}s")


def _criterion_10_cells():
    for q, p, k in ((3, 3, 1), (4, 2, 2), (5, 5, 1)):
        ctx = make_field(p, k)
        fs = [f for d in (1, 2) for f in monic_polys(ctx, d) if is_irreducible(f)]
        for n in (2, 3):
            for f in fs:
                yield ctx, n, f


def test_criterion_10a_observed_types_are_predicted():
    t0 = time.monotonic()
    cells = 0
    for ctx, n, f in _criterion_10_cells():
        spec = CensusSpec(ctx=ctx, n=n, fs=(f,))
        rep = run_census(spec)
        setup = derive_setup(spec)
        for tup in rep.histogram:
            assert predict_density(setup, targets=tup) > 0, (ctx, n, f.vals, tup)
        cells += 1
    elapsed = time.monotonic() - t0
    ok = cells >= 60 and elapsed < 60
    _report("10a", ok,
            f"all observed type tuples predicted positive over {cells} censuses, "
            f"time={elapsed:.2f}s")


def test_criterion_10b_frequencies_within_five_points():
    # asserted as stated; at q <= 5 the q^(-1/2)-scale error exceeds 5pp,
    # so this documents the measured worst deviation honestly
    t0 = time.monotonic()
    worst = 0.0
    worst_cell = None
    for ctx, n, f in _criterion_10_cells():
        spec = CensusSpec(ctx=ctx, n=n, fs=(f,))
        rep = run_census(spec)
        setup = derive_setup(spec)
        for tup, cnt in rep.histogram.items():
            pred = predict_density(setup, targets=tup)
            gap = abs(Fraction(cnt, rep.separable_total) - pred)
            if gap > worst:
                worst = gap
                worst_cell = (ctx.q, n, f.vals, tup)
    elapsed = time.monotonic() - t0
    ok = worst <= Fraction(5, 100) and elapsed < 60
    _report("10b", ok,
            f"worst |observed - predicted| = {float(worst):.3f} at "
            f"{worst_cell}, time={elapsed:.2f}s")


def test_criterion_11_determinism(capsys):
    commands = [
        ["census", "--p", "101", "--k", "1", "--n", "2", "--f", "X",
         "--seed", "0", "--deterministic"],
        ["census", "--p", "2", "--k", "6", "--n", "3", "--f", "X",
         "--seed", "0", "--deterministic"],
        ["swan", "--deg-bound", "10", "--seed", "0", "--deterministic"],
        ["disc", "--p", "2", "--k", "2", "--parity", "--deg-bound", "6",
         "--samples", "50", "--seed", "0", "--deterministic"],
        ["corr", "--p", "2", "--k", "6", "--omega", "0", "--omega", "1",
         "--seed", "0", "--deterministic"],
        ["wreath", "--n", "3", "--orbits", "3", "--seed", "0",
         "--deterministic"],
    ]
    ok = True
    for argv in commands:
        outs = []
        for threads in (1, 4):
            for _ in range(2):
                code = main(argv + ["--threads", str(threads)])
                out = capsys.readouterr().out
                assert code == 0
                outs.append(out)
        if len(set(outs)) != 1:
            ok = False
            break
    _report("11", ok, f"{len(commands)} commands byte-identical across "
                      "reruns and thread counts")
