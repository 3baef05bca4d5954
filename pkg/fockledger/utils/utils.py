import random
import zlib

import numpy as np


def set_random_seed(seed):
    """Set random seed."""

    seed = int(seed)

    # Set random seed for random
    random.seed(seed)
    # Set random seed for all numpy operations
    np.random.seed(seed=seed)


def claim_rng(seed, claim_id):
    """Build the generator of one claim from the run seed and the claim id.

    The stream depends only on (seed, claim_id), never on the order in which
    claims run.

    :param seed: The run seed.
    :type seed: int
    :param claim_id: The claim identifier.
    :type claim_id: str
    :rtype: np.random.Generator
    """

    return np.random.default_rng([int(seed), zlib.crc32(claim_id.encode("utf-8"))])


def merge(x, y):
    """Merge two nested dictionaries. Overwrite values in x with values in y."""

    merged = {**x, **y}

    xkeys = x.keys()

    for key in xkeys:
        if isinstance(x[key], dict) and key in y and isinstance(y[key], dict):
            merged[key] = merge(x[key], y[key])

    return merged


def str2dict(v, delim=",", assign="="):
    """Parse ``key=value`` pairs, e.g. ``xi=0.5,mu=2``."""

    dict = {}
    if not v or not v.strip():
        return dict
    for token in v.split(delim):
        if assign not in token:
            raise ValueError(f"Expected key{assign}value, got {token!r}")
        key, value = token.split(assign, 1)
        dict[key.strip()] = value.strip()

    return dict


def str2list(v, delim=","):
    return [t.strip() for t in v.split(delim) if t.strip()]


def to_jsonable(value):
    """Convert numpy scalars/arrays (possibly nested) into plain python values."""

    if isinstance(value, dict):
        return {key: to_jsonable(item) for key, item in value.items()}
    elif isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    elif isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    elif isinstance(value, np.bool_):
        return bool(value)
    elif isinstance(value, np.integer):
        return int(value)
    elif isinstance(value, np.floating):
        return float(value)
    else:
        return value
