"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time
import warnings

import numpy as np

from triway import oracle
from triway.archetypoid import ada, elbow
from triway.cli import main
from triway.clustering import auto_k, pam, quality_label
from triway.dataset import ThreeWayDissimilarity
from triway.datasets import fixture_path, load_journals, load_messages
from triway.hplot import hplot
from triway.threeway import (ProfileTag, arrange, asymmetry_report,
                             nearest_profiles, project)
from reference_data import (CONDITIONAL_D, UNCONDITIONAL_D, blob_profile,
                            random_dataset, small_instance)


def report(num, name, ok, detail=""):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def rescaled(ds, a, b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ThreeWayDissimilarity(
            labels=ds.labels, occasions=ds.occasions, values=a * ds.values + b,
            declared_symmetry=ds.declared_symmetry,
            conditionality=ds.conditionality)


def configurations_match(H_scaled, H_base, a, rtol=1e-8):
    """Equality of embeddings up to per-axis sign, relative tolerance."""
    ref = abs(a) * H_base
    scale = max(1.0, float(np.abs(ref).max()))
    for j in range(ref.shape[1]):
        direct = np.abs(H_scaled[:, j] - ref[:, j]).max()
        flipped = np.abs(H_scaled[:, j] + ref[:, j]).max()
        if min(direct, flipped) > rtol * scale:
            return False
    return True


def test_criterion_01_journal_goodness_of_fit():
    start = time.perf_counter()
    profile = project(load_journals(), 2)
    g1, g2 = profile.hplot.gof_cumulative[:2]
    elapsed = time.perf_counter() - start
    ok = (abs(g1 - 0.8017) <= 0.005 and abs(g2 - 0.9985) <= 0.005
          and elapsed < 1.0)
    report(1, "journal example goodness of fit",
           ok, f"gof=[{g1:.4f}, {g2:.4f}], {elapsed * 1000:.0f} ms")


def test_criterion_02_arrangements_bit_exact():
    uncond = arrange(load_messages())
    cond = arrange(load_messages(conditionality="conditional"))
    expected_tags = []
    for occ in ("1", "2"):
        expected_tags += [ProfileTag(l, occ, "to") for l in "ABCD"]
        expected_tags += [ProfileTag(l, occ, "from") for l in "ABCD"]
    ok = (uncond.data.shape == (4, 16)
          and np.array_equal(uncond.data, UNCONDITIONAL_D)
          and list(uncond.col_tags) == expected_tags
          and cond.data.shape == (8, 8)
          and np.array_equal(cond.data, CONDITIONAL_D))
    report(2, "arranged matrices bit-exact with block order", ok)


def test_criterion_03_ordinal_reproductions():
    pu = project(load_messages())
    ru = asymmetry_report(pu)
    nu = nearest_profiles(pu, 1)[0]
    pc = project(load_messages(conditionality="conditional"))
    rc = asymmetry_report(pc)
    nc = nearest_profiles(pc, 1)[0]
    checks = {
        "uncond min": (ru.most_symmetric.label,
                       ru.most_symmetric.occasion) == ("D", "1"),
        "uncond max": (ru.most_asymmetric.label,
                       ru.most_asymmetric.occasion) == ("A", "2"),
        "uncond nearest": {nu.a, nu.b} == {ProfileTag("D", "2", "to"),
                                           ProfileTag("D", "1", "from")},
        "cond min": rc.most_symmetric.label == "D",
        "cond max": rc.most_asymmetric.label == "C",
        "cond nearest": {nc.a, nc.b} == {ProfileTag("A", "all", "from"),
                                         ProfileTag("C", "all", "from")},
    }
    failed = [name for name, ok in checks.items() if not ok]
    report(3, "asymmetry extremes and nearest pairs", not failed,
           "all six ordinal facts" if not failed else f"failed: {failed}")


def test_criterion_04_full_rank_distance_theorem():
    worst = 0.0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(4, 21))
        m = int(rng.integers(2, 13))
        X = rng.random((r, m)) * 10
        H = hplot(X, m).coordinates
        for i in range(m):
            for j in range(i + 1, m):
                expected = oracle.sd_of_column_difference(X, i, j)
                got = float(np.linalg.norm(H[i] - H[j]))
                rel = abs(got - expected) / max(expected, 1e-300)
                worst = max(worst, rel)
    ok = worst <= 1e-9
    report(4, "full-rank distances equal sd of column differences",
           ok, f"worst relative error {worst:.2e} over 50 matrices")


def test_criterion_05_scale_invariance():
    ok = True
    for seed in range(20):
        rng = np.random.default_rng(500 + seed)
        a = float(rng.uniform(0.1, 10.0))
        b = float(rng.uniform(-5.0, 5.0))
        ds = random_dataset(seed, symmetric=False, conditional=bool(seed % 2))
        p1 = project(ds, 2)
        p2 = project(rescaled(ds, a, b), 2)
        ok &= configurations_match(p2.hplot.coordinates, p1.hplot.coordinates, a)
        ok &= bool(np.abs(p2.hplot.gof_cumulative
                          - p1.hplot.gof_cumulative).max() <= 1e-12)
        r1, r2 = asymmetry_report(p1), asymmetry_report(p2)
        ok &= ([(e.label, e.occasion) for e in r1.entries]
               == [(e.label, e.occasion) for e in r2.entries])
        ok &= ([(p.a, p.b) for p in nearest_profiles(p1)]
               == [(p.a, p.b) for p in nearest_profiles(p2)])
        if not ok:
            break
    report(5, "configuration equivariance under affine rescaling",
           ok, "20 seeded datasets")


def test_criterion_06_ada_against_exhaustive():
    start = time.perf_counter()
    matches, never_below, simplex_ok, traces_ok = 0, True, True, True
    for seed in range(100):
        Y, k = small_instance(seed)
        result = ada(Y, k)
        _, best = oracle.exhaustive_ada(Y, k)
        never_below &= result.rss >= best - 1e-9 * (1.0 + best)
        if abs(result.rss - best) <= 1e-6 * max(best, 1e-9):
            matches += 1
        simplex_ok &= bool(result.alphas.min() >= -1e-6)
        simplex_ok &= bool(np.abs(result.alphas.sum(axis=1) - 1).max() <= 1e-6)
        traces_ok &= all(b < a for a, b in zip(result.trace, result.trace[1:]))
    elapsed = time.perf_counter() - start
    ok = matches >= 90 and never_below and simplex_ok and traces_ok and elapsed < 30
    report(6, "archetypoid optimizer vs exhaustive enumeration", ok,
           f"{matches}/100 optimal, never below: {never_below}, "
           f"{elapsed:.1f} s")


def test_criterion_07_pam_against_exhaustive():
    matches, never_below, silhouettes_ok, labels_ok = 0, True, True, True
    for seed in range(100):
        Y, k = small_instance(seed)
        result = pam(Y, k)
        _, best = oracle.exhaustive_pam(Y, k)
        never_below &= result.objective >= best - 1e-9
        if abs(result.objective - best) <= 1e-9:
            matches += 1
        if k >= 2:
            ref_values, _ = oracle.naive_silhouette(Y, result.assignment)
            silhouettes_ok &= bool(np.abs(
                result.silhouette_per_point - np.asarray(ref_values)).max()
                <= 1e-12)
        labels_ok &= result.quality == quality_label(result.average_silhouette)
    spot = (quality_label(0.8) == "strong" and quality_label(0.53) == "reasonable"
            and quality_label(0.3) == "weak" and quality_label(0.2) == "none"
            and quality_label(0.7) == "reasonable" and quality_label(0.5) == "weak"
            and quality_label(0.25) == "none")
    ok = matches >= 95 and never_below and silhouettes_ok and labels_ok and spot
    report(7, "medoid optimizer vs exhaustive enumeration", ok,
           f"{matches}/100 optimal, never below: {never_below}")


def test_criterion_08_planted_structure_selection():
    best_k, _, _ = auto_k(blob_profile(), 6)
    bends = 0
    for seed in range(10):
        rng = np.random.default_rng(300 + seed)
        k_max = int(rng.integers(6, 12))
        k_star = int(rng.integers(2, k_max - 1))
        steep = float(rng.uniform(5.0, 20.0))
        shallow = float(rng.uniform(0.01, 0.2))
        value = 100.0 + float(rng.uniform(0.0, 50.0))
        curve = []
        for k in range(1, k_max + 1):
            curve.append((k, value))
            value -= steep if k < k_star else shallow
        choice = elbow(curve)
        bends += int(choice.k == k_star and not choice.no_elbow)
    ok = best_k == 3 and bends == 10
    report(8, "planted blobs and planted elbow bends recovered", ok,
           f"auto_k={best_k}, bends {bends}/10")


def test_criterion_09_scale():
    rng = np.random.default_rng(900)
    n, L = 100, 10
    values = rng.uniform(0.0, 50.0, size=(L, n, n))
    ds = ThreeWayDissimilarity(
        labels=[f"p{i}" for i in range(n)],
        occasions=[f"t{l}" for l in range(L)],
        values=values, declared_symmetry="asymmetric")
    start = time.perf_counter()
    p1 = project(ds, 2)
    project_time = time.perf_counter() - start
    assert p1.hplot.coordinates.shape == (2 * L * n, 2)

    # criterion-4 spot check on the full-rank embedding of the arranged matrix
    D = arrange(ds).data
    assert D.shape == (n, 2 * L * n)
    H = hplot(D, D.shape[1]).coordinates
    distance_ok = True
    for _ in range(25):
        i, j = rng.choice(D.shape[1], size=2, replace=False)
        expected = oracle.sd_of_column_difference(D, int(i), int(j))
        got = float(np.linalg.norm(H[int(i)] - H[int(j)]))
        distance_ok &= abs(got - expected) <= 1e-9 * max(expected, 1e-300)

    # criterion-5 spot check
    a, b = 3.7, -2.0
    p2 = project(rescaled(ds, a, b), 2)
    config_ok = configurations_match(p2.hplot.coordinates,
                                     p1.hplot.coordinates, a)
    gof_ok = bool(np.abs(p2.hplot.gof_cumulative
                         - p1.hplot.gof_cumulative).max() <= 1e-12)
    r1, r2 = asymmetry_report(p1), asymmetry_report(p2)
    order_ok = ([(e.label, e.occasion) for e in r1.entries]
                == [(e.label, e.occasion) for e in r2.entries])
    near_ok = ([(p.a, p.b) for p in nearest_profiles(p1, 300)]
               == [(p.a, p.b) for p in nearest_profiles(p2, 300)])
    elapsed = time.perf_counter() - start
    ok = (elapsed < 60 and project_time < 60 and distance_ok and config_ok
          and gof_ok and order_ok and near_ok)
    report(9, "n=100, L=10 projection with spot checks", ok,
           f"total {elapsed:.1f} s, projection {project_time:.1f} s")


def test_criterion_10_determinism(tmp_path):
    commands = [
        ["project", "--input", fixture_path("journals.csv")],
        ["project", "--input", fixture_path("messages.csv"),
         "--similarity-max", "50", "--conditionality", "conditional"],
        ["ada", "--input", fixture_path("messages.csv"),
         "--similarity-max", "50", "--k", "auto"],
        ["cluster", "--input", fixture_path("messages.csv"),
         "--similarity-max", "50", "--k", "2"],
    ]
    ok = True
    for i, args in enumerate(commands):
        first = tmp_path / f"{i}_a.json"
        second = tmp_path / f"{i}_b.json"
        ok &= main(args + ["--out", str(first)]) == 0
        ok &= main(args + ["--out", str(second)]) == 0
        ok &= first.read_bytes() == second.read_bytes()
    report(10, "byte-identical JSON across reruns", ok,
           f"{len(commands)} commands, two runs each")
