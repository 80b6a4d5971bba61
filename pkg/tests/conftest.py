import pytest
from hypothesis import HealthCheck, settings

from crsym import catalog
from crsym.grading import full_algebra
from crsym.scan import ScanConfig, run_scan
from crsym.structure import annotate

settings.register_profile("crsym", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("crsym")


@pytest.fixture(scope="session")
def atlas8():
    """Deduplicated scan of every nondegenerate monomial triple with d <= 8."""
    return run_scan(ScanConfig(8))


@pytest.fixture(scope="session")
def golden_reports():
    out = {}
    for name in catalog.CATALOG:
        report = full_algebra(catalog.get(name))
        annotate(report)
        out[name] = report
    return out
