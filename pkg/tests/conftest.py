"""Shared test configuration.

Property tests run derandomized so the suite is reproducible; the budget
and simulator code paths contain no randomness of their own.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")
