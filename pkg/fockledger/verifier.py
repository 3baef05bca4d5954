import logging
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from fockledger.claims import CLAIMS, ClaimContext
from fockledger.errors import CutoffOverflow
from fockledger.fock import CutoffPolicy
from fockledger.meta import Meta
from fockledger.utils.utils import to_jsonable

logger = logging.getLogger(__name__)


class ClaimResult(object):
    """The outcome of one claim.

    ``passed`` holds when |measured - expected| <= tolerance elementwise. A
    skipped claim has ``passed = None`` and a ``skip_reason``; a claim that
    raised has ``passed = False`` and an ``error``.
    """

    def __init__(
        self,
        claim_id,
        anchor,
        measured,
        expected,
        tolerance,
        passed,
        runtime_ms,
        skip_reason=None,
        error=None,
        details=None,
    ):
        self.claim_id = claim_id
        self.anchor = anchor
        self.measured = measured
        self.expected = expected
        self.tolerance = tolerance
        self.passed = passed
        self.runtime_ms = runtime_ms
        self.skip_reason = skip_reason
        self.error = error
        self.details = details or {}

    @property
    def skipped(self):
        return self.skip_reason is not None

    def to_dict(self):
        return to_jsonable(
            {
                "claim_id": self.claim_id,
                "anchor": self.anchor,
                "measured": self.measured,
                "expected": self.expected,
                "tolerance": self.tolerance,
                "passed": self.passed,
                "runtime_ms": self.runtime_ms,
                "skip_reason": self.skip_reason,
                "error": self.error,
                "details": self.details,
            }
        )

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}({self.claim_id}, passed={self.passed})"


def compare(measured, expected, tolerance):
    """Elementwise |measured - expected| <= tolerance; booleans compare as 0/1."""

    measured = np.asarray(measured, dtype=float)
    expected = np.asarray(expected, dtype=float)
    if measured.shape != expected.shape or not np.all(np.isfinite(measured)):
        return False
    return bool(np.all(np.abs(measured - expected) <= tolerance))


def run_claim(claim_id, seed, draws, policy, identity_tol, limit_tol):
    """Run one registered claim.

    :raises ValueError: for an unknown claim id.
    :rtype: ClaimResult
    """

    if claim_id not in CLAIMS:
        raise ValueError(f"Unrecognized claim: {claim_id}")
    claim = CLAIMS[claim_id]
    ctx = ClaimContext(claim_id, seed, draws, policy, identity_tol, limit_tol)
    tolerance = claim.tolerance_for(ctx)

    start = time.perf_counter()
    try:
        measured, expected = claim.func(ctx)
    except CutoffOverflow as e:
        logger.warning(f"Skipping {claim_id}: {e}")
        return ClaimResult(
            claim_id, claim.anchor, None, None, tolerance, None,
            int((time.perf_counter() - start) * 1000), skip_reason=str(e),
        )
    except Exception as e:
        logger.error(f"{claim_id} raised {type(e).__name__}: {e}")
        return ClaimResult(
            claim_id, claim.anchor, None, None, tolerance, False,
            int((time.perf_counter() - start) * 1000), error=f"{type(e).__name__}: {e}",
        )
    runtime_ms = int((time.perf_counter() - start) * 1000)

    passed = compare(measured, expected, tolerance)
    logger.info(f"{claim_id}: {'passed' if passed else 'FAILED'} in {runtime_ms} ms")
    return ClaimResult(
        claim_id,
        claim.anchor,
        to_jsonable(measured),
        to_jsonable(expected),
        tolerance,
        passed,
        runtime_ms,
        details=to_jsonable(ctx.details),
    )


class Verifier(object):
    """Runs a selection of the registered claims.

    :param claim_ids: Explicit claims to run, defaults to all.
    :type claim_ids: list of str, optional
    :param prefix: Keep only claims whose id starts with this prefix.
    :type prefix: str, optional
    """

    def __init__(self, claim_ids=None, prefix=None):
        if claim_ids is None:
            claim_ids = list(CLAIMS)
        for claim_id in claim_ids:
            if claim_id not in CLAIMS:
                raise ValueError(f"Unrecognized claim: {claim_id}")
        if prefix:
            claim_ids = [claim_id for claim_id in claim_ids if claim_id.startswith(prefix)]
        self.claim_ids = sorted(claim_ids)

    def run(
        self,
        seed=None,
        draws=None,
        policy=None,
        identity_tol=None,
        limit_tol=None,
        workers=None,
    ):
        """Run the claims, returning results ordered by claim id.

        Unset arguments come from ``Meta.config``.
        """

        config = Meta.get_config()
        verify_config = config["verify_config"]
        seed = int(config["meta_config"]["seed"] if seed is None else seed)
        draws = int(verify_config["draws"] if draws is None else draws)
        identity_tol = float(verify_config["identity_tol"] if identity_tol is None else identity_tol)
        limit_tol = float(verify_config["limit_tol"] if limit_tol is None else limit_tol)
        workers = int(verify_config["workers"] if workers is None else workers)
        if policy is None:
            policy = CutoffPolicy.from_config()

        logger.info(
            f"Verifying {len(self.claim_ids)} claims with seed {seed}, {draws} draws, "
            f"{workers} worker(s), {policy}"
        )
        args = [
            (claim_id, seed, draws, policy, identity_tol, limit_tol)
            for claim_id in self.claim_ids
        ]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(run_claim, *zip(*args)))
        else:
            results = [run_claim(*arg) for arg in args]

        return sorted(results, key=lambda result: result.claim_id)


def summarize(results, seed, tail_tol):
    """The full report: run parameters, counts and every result."""

    return {
        "seed": seed,
        "tail_tol": tail_tol,
        "passed": sum(result.passed is True for result in results),
        "failed": sum(result.passed is False for result in results),
        "skipped": sum(result.skipped for result in results),
        "results": [result.to_dict() for result in results],
    }


def failed_ids(results):
    return [result.claim_id for result in results if result.passed is False]
