import hashlib

SEED_MASK = 2 ** 64 - 1


def derive_seed(master_seed: int, *purpose) -> int:
    """
    Seed for one sub-experiment: ``master_seed`` XOR the first 8 bytes
    (big-endian) of the SHA-256 of the ``:``-joined ``purpose`` parts.

    Any part of an experiment, say layout 3 round 17, can therefore be replayed
    on its own with the seed it had in the full run.

    Examples
    --------
    >>> derive_seed(42, 0, 0, "deploy") == derive_seed(42, 0, 0, "deploy")
    True
    >>> derive_seed(42, 0, 0, "deploy") == derive_seed(42, 0, 1, "deploy")
    False
    """
    key = ":".join(str(part) for part in purpose).encode("utf-8")
    digest = int.from_bytes(hashlib.sha256(key).digest()[:8], "big")
    return (int(master_seed) ^ digest) & SEED_MASK
