from fractions import Fraction

import pytest

from rainbowgirth import RainbowFinder
from rainbowgirth.container import RainbowCycleCertificate
from rainbowgirth.core import verify_certificate
from rainbowgirth.errors import ParameterError, RainbowGirthError
from rainbowgirth.finder import MODE_FUNC_MAP
from rainbowgirth.generators import gen_random_family
from rainbowgirth.modes import all_modes, branch_sampling, branch_triangle, mainstronger, nonstar
from rainbowgirth.sampling import FinderResult
from rainbowgirth.seeding import derive_seed, make_rng


def test_finder_dispatches_by_mode(repair_example):
    finder = RainbowFinder(max_trials=16, seed=1)
    result = finder.find(repair_example, mode=nonstar, alpha=Fraction(1, 6))
    assert result.branch == branch_triangle

    graph = gen_random_family(120, {"matching2": 120}, 6)
    result = finder.find(graph, alpha=1, beta=0)
    assert result.mode == mainstronger
    assert result.branch == branch_sampling
    assert verify_certificate(graph, result.certificate)
    assert FinderResult.from_json(result.to_json()).certificate.vertices == result.certificate.vertices


@pytest.mark.parametrize("mode, params", [
    ("fastest", {"alpha": 1, "beta": 0}),
    (mainstronger, {"alpha": 1}),
    ("nonstarex", {"c": 0.1}),
])
def test_finder_rejects_bad_requests(repair_example, mode, params):
    with pytest.raises(ParameterError):
        RainbowFinder().find(repair_example, mode=mode, **params)


def test_finder_rejects_unknown_chooser():
    with pytest.raises(ParameterError):
        RainbowFinder(chooser="greedy")


def test_finder_refuses_invalid_certificates(monkeypatch, repair_example):
    bogus = FinderResult(
        mode=nonstar, branch=branch_triangle,
        certificate=RainbowCycleCertificate([0, 1, 2], [(0, 1), (1, 2), (0, 2)], [1, 1, 1]),
    )
    monkeypatch.setattr("rainbowgirth.finder.triangle_repair_find", lambda *args, **kwargs: bogus)
    with pytest.raises(RainbowGirthError):
        RainbowFinder().find(repair_example, mode=nonstar, alpha=Fraction(1, 6))


def test_derive_seed():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    assert len({derive_seed(7, i) for i in range(100)}) == 100
    assert 0 <= derive_seed(2**63, 5) < 2**64
    with pytest.raises(ValueError):
        derive_seed(-1, 0)


def test_every_mode_has_a_finder():
    assert set(MODE_FUNC_MAP) == set(all_modes)


def test_make_rng_is_seeded():
    assert make_rng(5).integers(1 << 30, size=4).tolist() == make_rng(5).integers(1 << 30, size=4).tolist()
