import pytest

import semicrossed as sc


@pytest.fixture
def doubling():
    return sc.doubling_map()


@pytest.fixture
def tripling():
    return sc.CircleTimesK(3)


@pytest.fixture
def golden_mean():
    return sc.golden_mean_shift()


@pytest.fixture
def perm3():
    return sc.PermutationSystem((1, 2, 0))


def assert_report_clean(report):
    bad = [r for r in report.rows if not r.passed]
    assert not bad, f"{report.check}: {len(bad)} failing rows, first: " + (
        f"{bad[0].name}: {bad[0].detail}" if bad else ""
    )
