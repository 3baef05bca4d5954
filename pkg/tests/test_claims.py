import pytest

from fockledger.claims import CLAIMS, IDENTITY, LIMIT, ClaimContext, claim
from fockledger.errors import CutoffOverflow
from fockledger.families import FAMILIES
from fockledger.fock import CutoffPolicy
from fockledger.verifier import ClaimResult, Verifier, compare, run_claim, summarize

DRAWS = 2
IDENTITY_TOL = 1e-9
LIMIT_TOL = 1e-2

EXPECTED_GROUPS = {
    "excess",
    "added",
    "hyper",
    "subtracted",
    "phase_ops",
    "log_states",
    "sub_poissonian",
    "cohvac",
    "negbin",
    "twofock",
    "families",
    "gamma",
    "cosh",
    "logq",
    "log0",
    "balazs",
    "transforms",
    "genfun",
}


def run(claim_id, seed=0, draws=DRAWS, policy=None):
    return run_claim(
        claim_id,
        seed,
        draws,
        policy or CutoffPolicy.from_config(),
        IDENTITY_TOL,
        LIMIT_TOL,
    )


def test_registry_covers_every_group():
    assert {claim_id.split(".")[0] for claim_id in CLAIMS} == EXPECTED_GROUPS
    for claim_id, registered in CLAIMS.items():
        assert registered.claim_id == claim_id
        assert registered.anchor


@pytest.mark.parametrize("claim_id", sorted(CLAIMS))
def test_claim_passes(claim_id):
    result = run(claim_id)

    assert result.error is None, result.error
    assert result.skip_reason is None, result.skip_reason
    assert result.passed, result.to_dict()


def test_compare():
    assert compare(0.5, 0.5, 0)
    assert compare([1e-10, 3], [0.0, 3], 1e-9)
    assert not compare([1e-8, 3], [0.0, 3], 1e-9)
    assert compare([True, 0], [True, 0], 0)
    assert not compare([True], [False], 0)
    assert not compare([1.0, 2.0], [1.0], 1.0)
    assert not compare(float("nan"), 0.0, 1.0)


def test_tolerance_defaults():
    ctx = ClaimContext("x", 0, 1, CutoffPolicy(), 1e-7, 1e-3)

    assert CLAIMS["excess.identity"].tolerance == IDENTITY
    assert CLAIMS["excess.identity"].tolerance_for(ctx) == 1e-7
    assert CLAIMS["phase_ops.coherent_small_limit"].tolerance == LIMIT
    assert CLAIMS["phase_ops.coherent_small_limit"].tolerance_for(ctx) == 1e-3
    assert CLAIMS["twofock.q_minus_limit"].tolerance_for(ctx) == 0.05


def test_duplicate_claim_is_rejected():
    with pytest.raises(ValueError, match="Duplicate"):

        @claim("excess.identity", "again")
        def again(ctx):
            return 0.0, 0.0


def test_random_specs_cycle_through_families():
    ctx = ClaimContext("excess.identity", 0, 3, CutoffPolicy(), IDENTITY_TOL, LIMIT_TOL)
    kinds = [spec.kind for spec in ctx.random_specs()]

    assert len(kinds) == 3 * len(FAMILIES)
    assert sorted(set(kinds)) == sorted(FAMILIES)
    assert kinds[: len(FAMILIES)] == kinds[len(FAMILIES) : 2 * len(FAMILIES)]
    assert all(kinds.count(kind) == 3 for kind in FAMILIES)

    ctx = ClaimContext("excess.identity", 0, 4, CutoffPolicy(), IDENTITY_TOL, LIMIT_TOL)
    assert [spec.kind for spec in ctx.random_specs(kinds=["negbin"])] == ["negbin"] * 4


def test_draws_depend_only_on_seed_and_claim():
    def specs(seed, claim_id):
        ctx = ClaimContext(claim_id, seed, 5, CutoffPolicy(), IDENTITY_TOL, LIMIT_TOL)
        return list(ctx.random_specs())

    assert specs(0, "excess.identity") == specs(0, "excess.identity")
    assert specs(0, "excess.identity") != specs(1, "excess.identity")


def test_cutoff_overflow_is_a_skip():
    result = run("cohvac.means", policy=CutoffPolicy(max_cutoff=8, initial_cutoff=4))

    assert result.passed is None
    assert result.skipped
    assert "max_cutoff" in result.skip_reason


def test_errors_fail_the_claim(monkeypatch):
    def broken(ctx):
        raise RuntimeError("boom")

    monkeypatch.setattr(CLAIMS["gamma.poisson"], "func", broken)
    result = run("gamma.poisson")

    assert result.passed is False
    assert result.error == "RuntimeError: boom"


def test_overflow_inside_claim_is_a_skip(monkeypatch):
    def overflowing(ctx):
        raise CutoffOverflow("needs cutoff 9000 > max_cutoff 4096")

    monkeypatch.setattr(CLAIMS["gamma.poisson"], "func", overflowing)
    assert run("gamma.poisson").skip_reason == "needs cutoff 9000 > max_cutoff 4096"


def test_verifier_selection():
    assert Verifier(prefix="cosh").claim_ids == [
        "cosh.negativity_p0",
        "cosh.negativity_p1",
        "cosh.poisson_collapse",
    ]
    assert Verifier(claim_ids=["gamma.ratio", "cosh.negativity_p1"]).claim_ids == [
        "cosh.negativity_p1",
        "gamma.ratio",
    ]
    with pytest.raises(ValueError, match="Unrecognized claim"):
        Verifier(claim_ids=["eq7"])
    with pytest.raises(ValueError, match="Unrecognized claim"):
        run("eq7")


def test_report_is_deterministic():
    def report():
        results = Verifier(prefix="excess").run(seed=3, draws=2)
        summary = summarize(results, 3, 1e-12)
        for result in summary["results"]:
            result.pop("runtime_ms")
        return summary

    first = report()
    assert first == report()
    assert first["seed"] == 3
    assert first["tail_tol"] == 1e-12
    assert first["passed"] == 3
    assert first["failed"] == first["skipped"] == 0
    assert [result["claim_id"] for result in first["results"]] == sorted(
        result["claim_id"] for result in first["results"]
    )


def test_claim_result_dict():
    result = ClaimResult("a.b", "x = y", 1.0, 1.0, 1e-9, True, 3)

    assert result.to_dict() == {
        "claim_id": "a.b",
        "anchor": "x = y",
        "measured": 1.0,
        "expected": 1.0,
        "tolerance": 1e-9,
        "passed": True,
        "runtime_ms": 3,
        "skip_reason": None,
        "error": None,
        "details": {},
    }
    assert not result.skipped
