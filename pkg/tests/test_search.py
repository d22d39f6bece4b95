import json
from importlib import import_module
from pathlib import Path

import pytest
from sympy import isprime

from spsp_search.bigmath import iroot_round, spsp_base_count
from spsp_search.driver import (
    Hit,
    Phase,
    SearchConfig,
    checkpoint_path,
    generate_k,
    parse_bound,
    partition_range,
    read_hits,
    search,
)
from spsp_search.driver.search import GenerationStats
from spsp_search.gcdfilter import CandidateK, GcdOutcome, UnresolvedResidualError
from spsp_search.signatures import BaseVector

search_module = import_module("spsp_search.driver.search")


def _oracle(bound: int, m: int) -> list[int]:
    return [
        n
        for n in range(9, bound + 1, 2)
        if spsp_base_count(n, m) == m and not isprime(n)
    ]


def test_parse_bound_forms() -> None:
    assert parse_bound("2048") == 2048
    assert parse_bound("1.4e6") == 1_400_000
    assert parse_bound("2.6E7") == 26_000_000
    assert parse_bound("10^7") == 10_000_000
    assert parse_bound(" 3_300_000_000 ") == 3_300_000_000


@pytest.mark.parametrize("text", ["1.5", "abc", "1e-3", ""])
def test_parse_bound_rejects_non_integers(text: str) -> None:
    with pytest.raises(ValueError):
        parse_bound(text)


def test_search_config_defaults_and_validation() -> None:
    cfg = SearchConfig(bound=2048, m=1)

    assert cfg.x == 13
    assert cfg.headroom == 1000
    with pytest.raises(ValueError):
        SearchConfig(bound=8, m=1)
    with pytest.raises(ValueError):
        SearchConfig(bound=2048, m=0)
    with pytest.raises(ValueError):
        SearchConfig(bound=2048, m=14)
    with pytest.raises(ValueError):
        SearchConfig(bound=2048, m=1, cutoff=46)


def test_search_config_from_yaml() -> None:
    cfg = SearchConfig.from_yaml("bound: 1.4e6\nbases: 2\nworkers: 2\nout: hits.txt\n")

    assert cfg.bound == 1_400_000
    assert cfg.m == 2
    assert cfg.workers == 2
    assert cfg.output_path == Path("hits.txt")
    with pytest.raises(ValueError):
        SearchConfig.from_mapping({"bound": 100, "bases": 1, "colour": "red"})
    with pytest.raises(ValueError):
        SearchConfig.from_mapping({"bases": 1})


def test_generate_k_for_two_factors() -> None:
    cfg = SearchConfig(bound=2048, m=1)

    gcd_side = [k.k for k in generate_k(2, cfg, mode=Phase.GCD)]
    sieve_side = [k.k for k in generate_k(2, cfg, mode=Phase.SIEVE)]

    assert gcd_side == [3, 5, 7, 11, 13]
    assert sieve_side == [17, 19, 23, 29, 31, 37, 41, 43]


def test_generate_k_three_factors_contains_psi_4_preproduct() -> None:
    cfg = SearchConfig(bound=3_300_000_000, m=4)
    stats = GenerationStats()

    ks = list(generate_k(3, cfg, mode=Phase.SIEVE, stats=stats))

    pairs = {k.factors for k in ks}
    assert (151, 751) in pairs
    assert stats.emitted == len(ks)
    assert all(k.sigma.m == 4 for k in ks)
    assert all(k.factors[0] >= 11 for k in ks)


def test_generate_k_respects_outer_range() -> None:
    cfg = SearchConfig(bound=10**6, m=2)

    ks = list(generate_k(3, cfg, mode=Phase.SIEVE, start=200, stop=300))

    assert ks
    assert all(200 <= k.largest_factor <= 300 for k in ks)


def test_generate_k_rejects_small_t() -> None:
    with pytest.raises(ValueError):
        list(generate_k(1, SearchConfig(bound=2048, m=1)))


def test_partition_range() -> None:
    assert partition_range(1, 10, 3) == [(1, 4), (5, 8), (9, 10)]
    assert partition_range(5, 4, 2) == []
    assert partition_range(1, 2, 4) == [(1, 1), (2, 2)]


def test_search_finds_psi_1() -> None:
    result = search(SearchConfig(bound=2048, m=1))

    assert result.psi == 2047
    assert [hit.factors for hit in result.hits] == [(23, 89)]
    assert result.complete
    assert result.exhausted


def test_search_finds_psi_2() -> None:
    result = search(SearchConfig(bound=1_400_000, m=2))

    assert result.psi == 1373653
    assert result.hits[0].factors == (829, 1657)


def test_search_finds_psi_3() -> None:
    result = search(SearchConfig(bound=26_000_000, m=3))

    assert result.psi == 25326001
    assert result.hits[0].factors == (2251, 11251)


def test_search_matches_brute_force_base_2() -> None:
    bound = 200_000

    result = search(SearchConfig(bound=bound, m=1))

    assert [hit.n for hit in result.hits] == _oracle(bound, 1)
    assert all(hit.bases_passed == 1 for hit in result.hits)


def test_search_is_partition_invariant() -> None:
    serial = search(SearchConfig(bound=200_000, m=1))
    parallel = search(SearchConfig(bound=200_000, m=1, workers=2))

    assert [h.n for h in parallel.hits] == [h.n for h in serial.hits]


@pytest.mark.parametrize("root", [4, 3, 2.5])
def test_search_is_cutoff_invariant(root: float) -> None:
    bound = 200_000
    cutoff = round(bound ** (1 / root))

    result = search(SearchConfig(bound=bound, m=1, cutoff=cutoff))

    assert [hit.n for hit in result.hits] == _oracle(bound, 1)


def test_search_without_signature_wheel() -> None:
    result = search(SearchConfig(bound=200_000, m=1, use_signatures=False))

    assert [hit.n for hit in result.hits] == _oracle(200_000, 1)


def test_search_writes_hit_file_and_resumes(tmp_path: Path) -> None:
    out = tmp_path / "hits.txt"
    cfg = SearchConfig(bound=1_400_000, m=2, output_path=out)

    first = search(cfg)

    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header.startswith(f"# B=1400000 m=2 X={iroot_round(1_400_000, 3)} ")
    assert read_hits(out) == first.hits
    ckpt = checkpoint_path(out)
    assert ckpt.exists()

    resumed = search(
        SearchConfig(bound=1_400_000, m=2, output_path=out, resume_from=ckpt)
    )

    assert resumed.hits == first.hits


def test_resume_rejects_other_search(tmp_path: Path) -> None:
    out = tmp_path / "hits.txt"
    search(SearchConfig(bound=2048, m=1, output_path=out))

    with pytest.raises(ValueError):
        search(SearchConfig(bound=4096, m=1, resume_from=checkpoint_path(out)))


def test_search_result_frame() -> None:
    result = search(SearchConfig(bound=2048, m=1))

    frame = result.to_frame()

    assert frame.loc[0, "n"] == 2047
    assert frame.loc[0, "factors"] == "23*89"
    assert frame.loc[0, "found_by"] == "sieve"


def test_hit_validates_factorization() -> None:
    with pytest.raises(ValueError):
        Hit(2047, (23, 87), 1, Phase.GCD)
    with pytest.raises(ValueError):
        Hit(2047, (89, 23), 1, Phase.GCD)


@pytest.mark.slow
def test_search_matches_brute_force_bases_2_and_3() -> None:
    bound = 10**7

    result = search(SearchConfig(bound=bound, m=2))

    assert [hit.n for hit in result.hits] == _oracle(bound, 2)


@pytest.mark.slow
def test_search_finds_psi_4() -> None:
    result = search(SearchConfig(bound=3_300_000_000, m=4))

    assert result.psi == 3215031751
    assert result.hits[0].factors == (151, 751, 28351)
    assert result.hits[0].t == 3


def _refuse_k(monkeypatch: pytest.MonkeyPatch, refused: int) -> None:
    original = search_module.gcd_filter

    def gcd_filter(
        k: CandidateK, nu: BaseVector, bound: int, **kwargs: int
    ) -> GcdOutcome:
        if k.k == refused:
            raise UnresolvedResidualError(k.k, 1000000007 * 1000000009)
        return original(k, nu, bound, **kwargs)

    monkeypatch.setattr(search_module, "gcd_filter", gcd_filter)


def test_interrupted_search_resumes_without_losing_hits(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    bound = 200_000
    out = tmp_path / "hits.txt"
    original = search_module._sieve_hits

    def interrupted(k: CandidateK, cfg: SearchConfig, nu: BaseVector) -> list[Hit]:
        if k.k >= 300:
            raise KeyboardInterrupt
        return original(k, cfg, nu)

    monkeypatch.setattr(search_module, "_sieve_hits", interrupted)
    with pytest.raises(KeyboardInterrupt):
        search(SearchConfig(bound=bound, m=1, output_path=out, checkpoint_every=1))
    monkeypatch.setattr(search_module, "_sieve_hits", original)

    ckpt = checkpoint_path(out)
    frontier = json.loads(ckpt.read_text(encoding="utf-8"))["units"]["sieve:2"]
    assert frontier["complete"] == 0
    assert frontier["frontier"] < 300

    resumed = search(
        SearchConfig(
            bound=bound, m=1, output_path=out, resume_from=ckpt, checkpoint_every=1
        )
    )

    assert [hit.n for hit in resumed.hits] == _oracle(bound, 1)
    assert [hit.n for hit in read_hits(out)] == _oracle(bound, 1)


def test_unresolved_residuals_survive_resume(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    _refuse_k(monkeypatch, 7)
    out = tmp_path / "hits.txt"

    first = search(SearchConfig(bound=2048, m=1, output_path=out))

    assert not first.complete
    assert [item.k for item in first.unresolved] == [7]
    assert first.psi == 2047

    monkeypatch.undo()
    resumed = search(
        SearchConfig(bound=2048, m=1, output_path=out, resume_from=checkpoint_path(out))
    )

    assert not resumed.complete
    assert resumed.unresolved == first.unresolved
