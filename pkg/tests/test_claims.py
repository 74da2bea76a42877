from __future__ import annotations

import json

import numpy as np
import pytest

from hyperclebsch.claims import (
    AMBIGUOUS,
    ConventionConfig,
    NotApplicable,
    Status,
    check_dF_consistency,
    get_claim,
    registry,
    run_suite,
    verify,
)
from hyperclebsch.extcalc import Form, ext_d, wedge
from hyperclebsch.hyperform import PotentialSet, build_A, build_B, extract_duals
from hyperclebsch.symexpr import Const, cos, evaluate, sin, sym

DEFAULT = ConventionConfig()
GOOD = (Status.HOLDS_EXACT, Status.HOLDS_NUMERIC)


# ------------------------------------------------------------------ registry


def test_registry_shape():
    claims = registry()
    assert [c.id for c in claims] == [f"C{i}" for i in range(1, 14)]
    assert get_claim("c10").applicable_m == frozenset({1})
    assert get_claim("C5").applicable_m == frozenset({3})
    assert get_claim("C11").applicable_m == frozenset({3})
    assert get_claim("C8").kind == "inequality"
    assert all(c.anchor for c in claims)
    with pytest.raises(KeyError):
        get_claim("C14")


def test_not_applicable():
    with pytest.raises(NotApplicable):
        verify("C10", DEFAULT, PotentialSet.generic(3))


def test_convention_validation():
    with pytest.raises(ValueError):
        ConventionConfig(trials=0)
    with pytest.raises(ValueError):
        ConventionConfig(mul_order="middle")
    with pytest.raises(ValueError):
        ConventionConfig(coeff_kind="vector")


# ------------------------------------------------------------- complex case


def test_complex_relations_hold_exactly():
    v = verify("C10", DEFAULT, PotentialSet.generic(1))
    assert v.status is Status.HOLDS_EXACT
    assert len(v.parts) == 4 and all(p.status is Status.HOLDS_EXACT for p in v.parts)


def test_complex_dg_on_the_right_fails():
    # dA + A~ ^ dg = 2 df^dg, so the right-hand reading is genuinely different
    v = verify("C10", ConventionConfig(mul_order="right"), PotentialSet.generic(1))
    assert v.status is Status.FAILS
    assert v.witness["term"] == "df1^df2"


def test_complex_hand_expansion():
    # independent of the claim machinery: A = f dg + dh, A~ = df - h dg
    f1, f3 = sym(1), sym(3)
    A = Form(1, 1, {(2,): f1, (3,): 1})
    At = Form(1, 1, {(1,): 1, (2,): -f3})
    dg = Form(1, 1, {(2,): 1})
    assert (ext_d(A) + wedge(dg, At)).is_zero()
    assert wedge(At, ext_d(A)).is_zero()
    assert wedge(A, ext_d(At)).is_zero()
    assert (wedge(A, ext_d(A)) - wedge(At, ext_d(At))).is_zero()
    bundle = extract_duals(build_B(PotentialSet.generic(1)))
    assert bundle.A == A and bundle.dual(1) == At


def test_complex_suite():
    report = run_suite(DEFAULT, 1)
    status = {c.id: v.status for c, v in report.entries}
    for cid in ("C1", "C2", "C3", "C9", "C10", "C13"):
        assert status[cid] is Status.HOLDS_EXACT, cid
    assert status["C12"] is Status.HOLDS_NUMERIC
    assert "C5" not in status and "C11" not in status


# ---------------------------------------------------------- quaternion case


@pytest.mark.parametrize("variant", ["plain", "conjugated"])
def test_real_part_claim_both_variants(variant):
    v = verify("C1", ConventionConfig(b_variant=variant), PotentialSet.generic(3))
    assert v.status is Status.HOLDS_EXACT


def test_printed_quaternion_duals_hold():
    assert verify("C2", DEFAULT, PotentialSet.generic(3)).status is Status.HOLDS_EXACT


@pytest.mark.parametrize("order", ["left", "right"])
def test_function_reading_is_ill_formed(order):
    cfg = ConventionConfig(coeff_kind="function", mul_order=order)
    v = verify("C4", cfg, PotentialSet.generic(3))
    assert v.status is Status.ILL_FORMED
    assert v.max_residual is None
    assert "1, 2" in v.detail


def test_nondegeneracy_witness():
    v = verify("C8", DEFAULT, PotentialSet.generic(3))
    assert v.status is Status.HOLDS_EXACT
    assert v.witness["term"] == "df1^df3^df5^df7"
    assert v.witness["coefficient"] in ("1", "-1")


def test_nondegeneracy_on_degenerate_potentials_is_underspecified():
    v = verify("C8", DEFAULT, PotentialSet(3, [Const(0)] * 7))
    assert v.status is Status.UNDERSPECIFIED


def test_quaternion_constraint_failure_is_reproducible_and_real():
    P = PotentialSet.generic(3)
    v1 = verify("C4", DEFAULT, P)
    v2 = verify("C4", DEFAULT, P)
    assert v1.status is Status.FAILS
    assert v1.witness == v2.witness and v1.max_residual == v2.max_residual
    # recompute dA + sum df_2k ^ A~k directly and evaluate at the witness
    bundle = extract_duals(build_B(P))
    lhs = ext_d(build_A(P))
    for k in range(1, 4):
        lhs = lhs + wedge(Form.d(3, 2 * k), bundle.dual(k))
    key = tuple(int(t[2:]) for t in v1.witness["term"].split("^"))
    value = evaluate(lhs.coefficient(key), v1.witness["point"])
    assert value == pytest.approx(v1.witness["value"], abs=1e-12)
    assert abs(value) == pytest.approx(v1.max_residual)


def test_octonion_duals_partly_underspecified():
    v = verify("C2", DEFAULT, PotentialSet.generic(7))
    statuses = [p.status for p in v.parts]
    assert statuses[2:] == [Status.UNDERSPECIFIED] * 5
    assert v.status in (Status.FAILS, Status.UNDERSPECIFIED)


def test_clifford_backend_runs():
    cfg = ConventionConfig(backend="clifford")
    assert verify("C1", cfg, PotentialSet.generic(3)).status is Status.HOLDS_EXACT
    assert verify("C4", cfg, PotentialSet.generic(2)).status is Status.HOLDS_EXACT


# ----------------------------------------------------------- dF consistency


@pytest.mark.parametrize(
    "m,zeros",
    [(1, ()), (3, (4, 6)), (3, (2, 6)), (3, (2, 4))],
)
def test_printed_dF_exact_when_exponent_has_one_direction(m, zeros):
    P = PotentialSet.generic(m).with_zeros(*zeros)
    residual, _ = check_dF_consistency(P, DEFAULT)
    assert residual <= 1e-6


def test_printed_dF_off_for_generic_quaternions():
    residual, point = check_dF_consistency(PotentialSet.generic(3), DEFAULT)
    assert residual > 1e-3 and len(point) == 7


def test_dF_check_with_substituted_potentials():
    f = {i: sym(i) for i in range(1, 8)}
    P = PotentialSet(3, (f[1] * f[3], sin(f[2]), f[3], Const(0), f[5], Const(0), cos(f[7])))
    residual, _ = check_dF_consistency(P, DEFAULT)
    assert residual <= 1e-6


# ---------------------------------------------------- substitution monotone


def _random_potentials(rng, m):
    n = 2 * m + 1
    out = []
    for _ in range(n):
        a, b = (sym(int(i)) for i in rng.integers(1, n + 1, size=2))
        c = int(rng.integers(-2, 3))
        kind = rng.integers(0, 4)
        if kind == 0:
            out.append(a)
        elif kind == 1:
            out.append(a * b + c)
        elif kind == 2:
            out.append(a - b * b)
        else:
            out.append(sin(a) + c)
    return PotentialSet(m, tuple(out))


IDENTITY_CLAIMS = {1: ["C1", "C2", "C3", "C4", "C6", "C7", "C9", "C10", "C13"], 3: ["C1", "C2", "C9"]}


@pytest.mark.parametrize("m", [1, 3])
def test_holds_survives_substitution(m):
    generic = PotentialSet.generic(m)
    rng = np.random.default_rng(40 + m)
    for cid in IDENTITY_CLAIMS[m]:
        assert verify(cid, DEFAULT, generic).status is Status.HOLDS_EXACT
        for _ in range(10):
            v = verify(cid, DEFAULT, _random_potentials(rng, m))
            assert v.status in GOOD, (cid, v.witness)


# ---------------------------------------------------------------- reports


def test_report_is_deterministic():
    a = run_suite(DEFAULT, 3, grid=True).dumps()
    b = run_suite(DEFAULT, 3, grid=True).dumps()
    assert a == b


def test_grid_covers_every_reading():
    report = run_suite(DEFAULT, 3, grid=True)
    for cid in AMBIGUOUS:
        cells = {(v.convention.coeff_kind, v.convention.mul_order) for v in report.verdicts(cid)}
        assert len(cells) == 4
    for cid in ("C3", "C4", "C5"):
        for v in report.verdicts(cid):
            if v.convention.coeff_kind == "function":
                assert v.status is Status.ILL_FORMED


def test_report_json_schema():
    doc = json.loads(run_suite(DEFAULT, 1).dumps())
    assert {"m", "backend", "seed", "convention", "claims", "tolerance", "version"} <= set(doc)
    for entry in doc["claims"]:
        assert {"id", "anchor", "status", "convention", "parts"} <= set(entry)
        assert "ms" not in entry
        assert entry["status"] in {s.value for s in Status}
    timed = json.loads(run_suite(DEFAULT, 1, ids=["C1"]).dumps(timing=True))
    assert timed["claims"][0]["ms"] >= 0


def test_report_records_fails_without_raising():
    report = run_suite(DEFAULT, 3)
    fails = [v for _, v in report.entries if v.status is Status.FAILS]
    assert fails and all(v.witness and "point" in v.witness and "seed" in v.witness for v in fails)
    text = report.to_text()
    assert "C4" in text and "Fails" in text


def test_seed_changes_witness_not_verdict():
    a = verify("C4", ConventionConfig(seed=1), PotentialSet.generic(3))
    b = verify("C4", ConventionConfig(seed=2), PotentialSet.generic(3))
    assert a.status is b.status is Status.FAILS
    assert a.witness["point"] != b.witness["point"]
