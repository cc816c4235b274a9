"""Parameter rules driven by a (possibly guessed) noise variance.

The runtime results only give orders of growth, so each rule carries a
visible constant: ``ck`` for the cGA population size, ``cm`` for the number
of resamples and ``ct`` for the length of a noise-oblivious phase.
"""

from __future__ import annotations

import math

DEFAULT_CK = 1.0
DEFAULT_CM = 3.0
DEFAULT_CT = 2.0


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"sizing rules need n >= 2, got {n}")


def default_population_size(sigma2: float, n: int, ck: float = DEFAULT_CK) -> int:
    """``ceil(ck * max(sigma2, 1) * sqrt(n) * ln n)``."""
    _check_n(n)
    return max(1, math.ceil(ck * max(sigma2, 1.0) * math.sqrt(n) * math.log(n)))


def default_resamples(sigma2: float, n: int, cm: float = DEFAULT_CM) -> int:
    """``ceil(cm * (sigma2 + 1) * ln n)`` noisy calls per search point."""
    _check_n(n)
    return max(1, math.ceil(cm * (sigma2 + 1.0) * math.log(n)))


def cga_phase_budget(sigma2: float, n: int, ck: float = DEFAULT_CK,
                     ct: float = DEFAULT_CT) -> int:
    """Evaluations granted to a cGA run sized for ``sigma2``.

    ``K * sigma2 * sqrt(n) * ln(K n)`` iterations scaled by ``ct``, times two
    evaluations per iteration.
    """
    K = default_population_size(sigma2, n, ck)
    s = max(sigma2, 1.0)
    return 2 * math.ceil(ct * K * s * math.sqrt(n) * math.log(K * n))


def rerls_phase_budget(sigma2: float, n: int, cm: float = DEFAULT_CM,
                       ct: float = DEFAULT_CT) -> int:
    """Evaluations granted to a reRLS run sized for ``sigma2``.

    ``2 * ct * cm * max(sigma2, 1) * n * ln(n)^2``: at least ``ct * n ln n``
    iterations at ``default_resamples`` calls each, and exactly linear in the
    variance guess so that the phase lengths of the doubling scheme add up to
    no more than the next phase.
    """
    _check_n(n)
    s = max(sigma2, 1.0)
    return math.ceil(2.0 * ct * cm * s * n * math.log(n) ** 2)
