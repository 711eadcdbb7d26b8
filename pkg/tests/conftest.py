from hypothesis import HealthCheck, settings

from boadd.log import logger

settings.register_profile(
    "ci", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("dev", max_examples=10, deadline=None)
settings.load_profile("ci")

logger.initialize(name="Tests", level="WARNING")
