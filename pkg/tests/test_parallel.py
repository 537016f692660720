from __future__ import annotations

import time

import pytest

from cosetra.groups import cyclic
from cosetra.kernel import complex_algebra
from cosetra.kernel.structure import COMPOSE_CACHE_SIZE
from cosetra.measure import measure_algebra, stabilizer_data
from cosetra.utils import LockedLRUCache, parallel_map, resolve_workers


def test_parallel_map_keeps_input_order():
    def slow_square(n: int) -> int:
        time.sleep(0.001 * (5 - n % 5))
        return n * n

    assert parallel_map(slow_square, range(20), workers=4) == [n * n for n in range(20)]


def test_resolve_workers_precedence(monkeypatch):
    monkeypatch.setenv("COSETRA_THREADS", "3")
    assert resolve_workers(2) == 2
    assert resolve_workers() == 3
    monkeypatch.setenv("COSETRA_THREADS", "many")
    assert 1 <= resolve_workers() <= 8
    assert resolve_workers(0) == 1


def test_cache_evicts_least_recently_used():
    cache: LockedLRUCache[int] = LockedLRUCache(maxsize=2)
    cache.put("a", 1)
    cache.put("b", 2)
    assert cache.get("a") == 1
    cache.put("c", 3)
    assert "b" not in cache
    assert cache.get("a") == 1 and cache.get("c") == 3
    assert len(cache) == 2
    cache.clear()
    assert cache.get("a") is None


def test_cache_rejects_empty_size():
    with pytest.raises(ValueError, match="maxsize"):
        LockedLRUCache(maxsize=0)


def test_cache_stays_bounded_under_threads():
    cache: LockedLRUCache[int] = LockedLRUCache(maxsize=50)
    parallel_map(lambda k: cache.put(k, k * k), range(1000), workers=8)
    assert len(cache) == 50


def test_shared_caches_are_bounded():
    A = complex_algebra(cyclic(4))
    before = A.compose_cache.cache_info()
    assert A.compose(0b0010, 0b0010) == 0b0100
    assert A.compose(0b0010, 0b0010) == 0b0100
    info = A.compose_cache.cache_info()
    assert info.maxsize == COMPOSE_CACHE_SIZE
    assert info.hits > before.hits

    m = measure_algebra(A)
    m.cache.maxsize = 1
    first = stabilizer_data(m, 0b0011, 0, 0)
    stabilizer_data(m, 0b0101, 0, 0)
    assert len(m.cache) == 1
    assert stabilizer_data(m, 0b0011, 0, 0) == first
