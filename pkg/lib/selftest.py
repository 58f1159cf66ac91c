"""
The acceptance suite behind `cli.py selftest`.

Each criterion returns a dict with its name, a pass flag, the numbers it
checked and its wall time. Randomized criteria use config.RANDOM_SEED unless
a seed is passed in; the seed is recorded in the report.
"""
import itertools
import random
import sys
import time

import numpy as np

import config
from lib import line_config, tangent_surface, theorem44
from lib.braid_core import (
    BraidWord,
    Permutation,
    canonical_form,
    delta,
    perm_of,
    permutation_braid_of,
    random_word,
)
from lib.errors import CollisionFound, HypothesisFailed, MWLinksError
from lib.mw_links import WParams, expected_invariants, sweep, w_braid
from lib.projective_closure import describe_closure, diagram_stats, lift, rp3_doubled_linking_matrix
from lib.torus_links import TorusParams, component_count, cr_formula, ps_formula, t_braid


def log(message):
    print(f"[SELFTEST] {message}", file=sys.stderr, flush=True)


def torus_formulas():
    checked, bad = 0, []
    for p in range(1, 13):
        for q in range(1, p + 1):
            if (p - q) % 2:
                continue
            t = TorusParams(p, q)
            stats = diagram_stats(t_braid(q, p))
            components = len(describe_closure(t_braid(p, q)).components)
            swapped = len(describe_closure(t_braid(q, p)).components)
            if (stats.crossings != cr_formula(t) or stats.arcs != q or ps_formula(t) != q
                    or components != component_count(t) or swapped != component_count(t)):
                bad.append([p, q])
            checked += 1
    return {"checked": checked, "failures": bad}, not bad


def theorem_a_sweep():
    sweeps = [theorem44.sweep_check_a(d) for d in range(3, 8)]
    rejected_delta = []
    for d in range(3, 8):
        try:
            theorem44.check_a(delta(d), d)
        except HypothesisFailed as e:
            rejected_delta.append(e.details["which"])
    ok = (all(not s["failures"] and not s["signature_mismatches"] and s["certified"] == s["candidates"] > 0
              for s in sweeps)
          and len(rejected_delta) == 5)
    details = {
        "candidates": {s["d"]: s["candidates"] for s in sweeps},
        "certified": {s["d"]: s["certified"] for s in sweeps},
        "delta_rejected_by": rejected_delta,
    }
    return details, ok


def theorem_b_random(rng, instances=None):
    instances = config.RANDOM_CHECK_B if instances is None else instances
    runs = [theorem44.random_check_b(d, instances, rng) for d in range(4, 9)]
    ok = all(not r["signature_mismatches"] and not r["certificate_failures"]
             and r["certified"] >= (instances + 1) // 2 for r in runs)
    details = {
        "instances": instances,
        "certified": {r["d"]: r["certified"] for r in runs},
        "rejected": {r["d"]: r["rejected"] for r in runs},
        "signature_mismatches": [m for r in runs for m in r["signature_mismatches"]],
        "certificate_failures": [f for r in runs for f in r["certificate_failures"]],
    }
    return details, ok


def w_models():
    result = sweep(8)
    w11 = expected_invariants(WParams((1, 1)))
    ok = not result["failures"] and w11["w_lambda_abs"] == 2
    return {"checked": result["checked"], "failures": result["failures"],
            "w_lambda_abs_w11": w11["w_lambda_abs"]}, ok


def lift_coherence(rng):
    bad = []
    checked = 0
    for n in range(1, 6):
        for images in itertools.permutations(range(1, n + 1)):
            w = permutation_braid_of(Permutation(images))
            if perm_of(lift(w)) != perm_of(w + delta(n)).power(2):
                bad.append(str(w))
            checked += 1
    for _ in range(1000):
        n = rng.randint(1, 8)
        w = random_word(rng, n, rng.randint(0, 20))
        if perm_of(lift(w)) != perm_of(w + delta(n)).power(2):
            bad.append(str(w))
        checked += 1
    lift_bad = []
    for p in range(1, 13):
        for q in range(1, p + 1):
            if (p - q) % 2 == 0 and len(lift(t_braid(q, p))) != p * (q - 1):
                lift_bad.append([p, q])
    return {"checked": checked, "failures": bad, "lift_crossing_failures": lift_bad}, not bad and not lift_bad


def line_configurations(rng, count=None):
    count = config.RANDOM_HOPF_CONFIGS if count is None else count
    bad = []
    for index in range(count):
        lines = line_config.random_hopf_configuration(rng.randint(2, 6), rng)
        try:
            script = line_config.standardize(lines)
            certificate = line_config.verify_script(script)
            if not certificate.verified or not line_config.final_equations_hold(script):
                bad.append(index)
        except MWLinksError as e:
            log(f"configuration {index} failed: {e.message}")
            bad.append(index)
    try:
        line_config.verify_script(line_config.collision_fixture())
        collision_rejected = False
    except CollisionFound:
        collision_rejected = True
    return {"configurations": count, "failures": bad, "collision_rejected": collision_rejected}, \
        not bad and collision_rejected


def tangent_sections(m=2048, angles=8):
    bad = []
    worst = 0.0
    for d in range(4, 8):
        for pencil in ("lprime", "l"):
            for j in range(angles):
                c = tangent_surface.section(d, pencil, j * np.pi / angles, m)
                residual = tangent_surface.rotational_residual(c)
                worst = max(worst, residual)
                if (tangent_surface.cusp_count(c) != tangent_surface.expected_cusps(d, pencil)
                        or residual >= config.SYMMETRY_TOLERANCE):
                    bad.append({"d": d, "pencil": pencil, "phi_index": j,
                                "cusps": tangent_surface.cusp_count(c), "residual": residual})
    return {"samples": m, "angles": angles, "worst_residual": worst, "failures": bad}, not bad


def controls():
    delta_rejected = True
    for d in range(3, 8):
        try:
            theorem44.check_a(delta(d), d)
            delta_rejected = False
        except HypothesisFailed:
            pass
    distinguishes = canonical_form(BraidWord(3, (1, 2))) != canonical_form(BraidWord(3, (2, 1)))
    mirror_ok = True
    for w in (delta(3), w_braid(WParams((1, 1, 2))), t_braid(3, 5)):
        entries = rp3_doubled_linking_matrix(w).entries
        mirrored = rp3_doubled_linking_matrix(w.mirror()).entries
        if any(mirrored[i][j] != -entries[i][j] for i in range(len(entries)) for j in range(len(entries))):
            mirror_ok = False
    details = {"delta_rejected": delta_rejected, "normal_form_distinguishes": distinguishes,
               "mirror_negates": mirror_ok}
    return details, delta_rejected and distinguishes and mirror_ok


def run_selftest(seed=None, hopf_configs=None):
    seed = config.RANDOM_SEED if seed is None else seed
    rng = random.Random(seed)
    criteria = [
        ("torus_formulas", torus_formulas),
        ("theorem_a_exhaustive", theorem_a_sweep),
        ("theorem_b_random", lambda: theorem_b_random(rng)),
        ("w_models", w_models),
        ("lift_coherence", lambda: lift_coherence(rng)),
        ("line_configurations", lambda: line_configurations(rng, hopf_configs)),
        ("tangent_sections", tangent_sections),
        ("controls", controls),
    ]
    report = {"seed": seed, "criteria": []}
    for name, run in criteria:
        started = time.time()
        try:
            details, passed = run()
        except MWLinksError as e:
            details, passed = e.to_dict(), False
        elapsed = round(time.time() - started, 3)
        log(f"{name}: {'ok' if passed else 'FAILED'} ({elapsed}s)")
        report["criteria"].append({"name": name, "passed": passed, "seconds": elapsed, "details": details})
    report["passed"] = all(c["passed"] for c in report["criteria"])
    return report
