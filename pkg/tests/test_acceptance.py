"""Acceptance gate: each criterion prints one PASS/FAIL line and asserts."""
import pytest

from happycoloring import io
from happycoloring.verify import (
    cluster_fpt_suite,
    gadget_suite,
    gmc_suite,
    kernel_suite,
    modulator_suite,
    nmc_suite,
    roundtrip_suite,
    structure_suite,
)


def report(capsys, label, rep, extra_ok=True, extra=""):
    ok = rep.ok and extra_ok
    with capsys.disabled():
        print(f"\n[{label}] {'PASS' if ok else 'FAIL'} {rep.line().split(' ', 1)[1]}{extra}")
        for f in rep.failures[:10]:
            print("    " + f)
    return ok


def test_criterion_1_cluster_fpt_matches_oracle(capsys):
    rep = cluster_fpt_suite(range(200))
    assert rep.checked >= 200
    assert report(capsys, "1 cluster-fpt", rep, rep.seconds <= 60, " (limit 60s)")


def test_criterion_2_gmc_correspondence(capsys):
    rep = gmc_suite(range(200))
    assert rep.checked >= 200
    assert report(capsys, "2 gmc", rep)


def test_criterion_3_kernels(capsys):
    rep = kernel_suite(range(100))
    assert rep.checked >= 100
    assert report(capsys, "3 kernels", rep)


def test_criterion_4_nmc_cliquewidth(capsys):
    rep = nmc_suite(range(100))
    assert rep.checked >= 100
    assert report(capsys, "4 nmc", rep)


def test_criterion_5_gadget_equivalence_exhaustive(capsys):
    rep = gadget_suite(max_rmis_n=6, max_r=4, max_b=3)
    assert rep.checked > 0
    assert report(capsys, "5 gadgets", rep)


def test_criterion_6_modulators(capsys):
    rep = modulator_suite(range(100))
    assert rep.checked >= 100
    assert report(capsys, "6 modulators", rep)


def test_criterion_7_gadget_structure(capsys):
    rep = structure_suite(max_rmis_n=6, max_r=4, max_b=3, seeds=range(50))
    assert rep.checked > 0
    assert report(capsys, "7 structure", rep)


def test_criterion_8_roundtrip(capsys):
    rep = roundtrip_suite(range(1000))
    assert rep.checked == 1000 * len(io.PARSERS)
    assert report(capsys, "8 roundtrip", rep, extra=" (suite wall-clock checked at session end)")
