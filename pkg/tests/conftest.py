import pytest

from ramanujan_nagell import VerifyConfig


@pytest.fixture(scope="session")
def small_config() -> VerifyConfig:
    """Bounds that keep a full verification (and its replay) well under a second."""
    return VerifyConfig(
        n_max=200,
        k_max=3,
        d_sweep=60,
        trace_max=300,
        trace_pow_max=100,
        theta_scan_max=41,
        sign_max=21,
        lte_k_max=10,
        shift_m1_max=7,
        shift_d_max=10,
    )
