import json

import pytest

from fnclass.cache import (cache_dir, load_json, load_profile_counts,
                           report_path, save_json, save_profile_counts)


class TestCacheDir:
    def test_explicit_path(self, tmp_path, monkeypatch):
        monkeypatch.delenv("FNCLASS_CACHE", raising=False)
        target = tmp_path / "cache"
        assert cache_dir(str(target)) == target
        assert target.is_dir()

    def test_environment_overrides_flag(self, tmp_path, monkeypatch):
        env_dir = tmp_path / "env"
        monkeypatch.setenv("FNCLASS_CACHE", str(env_dir))
        assert cache_dir(str(tmp_path / "flag")) == env_dir


class TestJsonReports:
    def test_round_trip(self, tmp_path):
        path = report_path(tmp_path, "sep", 2, 3)
        payload = {"relation": "sep", "classes": [{"size": 194}]}
        save_json(path, payload)
        assert load_json(path) == payload
        # deterministic byte-for-byte output
        first = path.read_bytes()
        save_json(path, payload)
        assert path.read_bytes() == first

    def test_missing_returns_none(self, tmp_path):
        assert load_json(tmp_path / "absent.json") is None


class TestBinaryCounts:
    def test_round_trip(self, tmp_path):
        counts = {(0, 0, 0, 0, 0): 2, (5, 10, 10, 5, 1): 4274814914,
                  (4, 6, 4, 1, 0): 301970}
        path = tmp_path / "counts.fncp"
        save_profile_counts(path, 2, 5, counts)
        k, n, got = load_profile_counts(path)
        assert (k, n) == (2, 5)
        assert got == counts

    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "bogus.fncp"
        path.write_bytes(b"NOPE" + b"\x00" * 16)
        with pytest.raises(ValueError, match="not a profile-count"):
            load_profile_counts(path)

    def test_rejects_ragged_profiles(self, tmp_path):
        with pytest.raises(ValueError, match="one length"):
            save_profile_counts(tmp_path / "x.fncp", 2, 5,
                                {(1, 2): 3, (1, 2, 3): 4})
