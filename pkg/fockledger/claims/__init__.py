from fockledger.claims.base import CLAIMS, IDENTITY, LIMIT, Claim, ClaimContext, claim

# Registers the claims
from fockledger.claims import generating, moments, phase_operators, states  # noqa: F401, E402

__all__ = ["CLAIMS", "IDENTITY", "LIMIT", "Claim", "ClaimContext", "claim"]
