import pytest

from cannonball import config
from cannonball.characters import characters, twisted_value
from cannonball.equidist import erdos_turan_bound, frac_family
from cannonball.parallel import chunks, pairwise_sum, pmap
from cannonball.series import partial_G


def test_chunks():
    assert chunks(0, 0) == []
    assert chunks(0, 5, 2) == [(0, 2), (2, 4), (4, 5)]
    assert chunks(3, 4) == [(3, 4)]


def test_pmap_ordered():
    assert pmap(lambda v: v * v, range(50), workers=8) == [v * v for v in range(50)]


def test_pairwise_sum_tree():
    assert pairwise_sum([]) == 0.0
    assert pairwise_sum([1.0, 2.0, 3.0]) == (1.0 + 2.0) + 3.0
    assert pairwise_sum([1e16, 1.0, -1e16, 1.0]) == (1e16 + 1.0) + (-1e16 + 1.0)


def _results():
    return (
        partial_G(2.6, 300_000).value,
        twisted_value(characters(7)[2], 300_000),
        erdos_turan_bound(frac_family(1, 7, 3, 5000), 200).bound,
    )


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_worker_count_is_invisible(workers):
    with config.using(config.current().with_(worker_count=1)):
        base = _results()
    with config.using(config.current().with_(worker_count=workers)):
        assert _results() == base
