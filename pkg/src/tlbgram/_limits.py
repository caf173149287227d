"""Range guards for the expensive operations.

Every guarded entry point refuses inputs beyond the tested range unless
TLBGRAM_ALLOW_LARGE is set in the environment.  Overriding the guards is
unsupported: nothing breaks mathematically, but run times and memory are
untested out there.
"""

import os


def allow_large() -> bool:
    return os.environ.get("TLBGRAM_ALLOW_LARGE", "") not in ("", "0")


def guard(ok: bool, what: str) -> None:
    if not ok and not allow_large():
        raise ValueError(
            f"{what}; set TLBGRAM_ALLOW_LARGE=1 to override (unsupported)"
        )
