"""
Tests for the sqlite result cache.
"""

import sqlite3

import pytest

from result_cache import ResultCache

SETTINGS = {"tol": 1e-9, "seed": 0x5EED, "triple_limit": 12}


@pytest.fixture
def cache(tmp_path):
    return ResultCache(str(tmp_path / "cache" / "results.db"))


def test_creates_database_directory(tmp_path):
    """Test the database directory is created on demand"""
    path = tmp_path / "nested" / "dir" / "results.db"
    ResultCache(str(path))
    assert path.exists()


def test_miss_then_hit(cache):
    """Test a stored payload is returned for the same key"""
    assert cache.get_cached_result("abc", "fusion", SETTINGS) is None
    assert cache.store_result("abc", "fusion", SETTINGS, {"N": [[1]]}, group_name="C1")
    assert cache.get_cached_result("abc", "fusion", SETTINGS) == {"N": [[1]]}


def test_settings_change_misses(cache):
    """Test a different tolerance does not reuse the entry"""
    cache.store_result("abc", "verify", SETTINGS, {"pass": True})
    assert cache.get_cached_result("abc", "verify", dict(SETTINGS, tol=1e-6)) is None
    assert cache.get_cached_result("abc", "modular", SETTINGS) is None
    assert cache.get_cached_result("xyz", "verify", SETTINGS) is None


def test_settings_hash_is_order_independent():
    """Test the settings hash ignores key order"""
    a = ResultCache.compute_settings_hash({"tol": 1e-9, "seed": 1})
    b = ResultCache.compute_settings_hash({"seed": 1, "tol": 1e-9})
    assert a == b
    assert a != ResultCache.compute_settings_hash({"seed": 2, "tol": 1e-9})


def test_stats_count_uses(cache):
    """Test use counts in the statistics"""
    cache.store_result("abc", "fusion", SETTINGS, {"N": []}, group_name="S3")
    cache.get_cached_result("abc", "fusion", SETTINGS)
    cache.get_cached_result("abc", "fusion", SETTINGS)
    stats = cache.get_cache_stats()
    assert stats["total_entries"] == 1
    assert stats["total_uses"] == 3
    assert stats["commands"] == {"fusion": {"entries": 1, "uses": 3}}
    assert stats["top_results"][0] == {"group": "S3", "command": "fusion", "uses": 3,
                                       "last_used": stats["top_results"][0]["last_used"]}


def test_replace_existing_entry(cache):
    """Test storing again under the same key replaces the payload"""
    cache.store_result("abc", "irreps", SETTINGS, {"v": 1})
    cache.store_result("abc", "irreps", SETTINGS, {"v": 2})
    assert cache.get_cached_result("abc", "irreps", SETTINGS) == {"v": 2}
    assert cache.get_cache_stats()["total_entries"] == 1


def test_unserializable_payload(cache):
    """Test a payload that is not JSON is refused without raising"""
    assert cache.store_result("abc", "group", SETTINGS, {"bad": object()}) is False


def test_clear_by_group_and_command(cache):
    """Test clearing one group or one command leaves the rest"""
    cache.store_result("abc", "group", SETTINGS, {"order": 1})
    cache.store_result("abc", "fusion", SETTINGS, {"N": []})
    cache.store_result("xyz", "fusion", SETTINGS, {"N": []})
    assert cache.clear_cache(group_key="abc", command="fusion") == 1
    assert cache.get_cached_result("abc", "group", SETTINGS) == {"order": 1}
    assert cache.clear_cache(command="fusion") == 1
    assert cache.clear_cache() == 1
    assert cache.get_cache_stats()["total_entries"] == 0


def test_prune_stale_results(cache):
    """Test results unused for longer than the age limit are dropped"""
    cache.store_result("old", "verify", SETTINGS, {"pass": True})
    cache.store_result("new", "verify", SETTINGS, {"pass": True})
    with sqlite3.connect(cache.db_path) as conn:
        conn.execute("UPDATE result_cache SET last_used_at = datetime('now', '-40 days') WHERE group_key = 'old'")
        conn.commit()
    assert cache.prune_stale_results(30) == 1
    assert cache.get_cached_result("old", "verify", SETTINGS) is None
    assert cache.get_cached_result("new", "verify", SETTINGS) == {"pass": True}
    with pytest.raises(ValueError):
        cache.prune_stale_results(-1)
