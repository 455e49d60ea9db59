import random
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings, strategies as st

from botrf.geodesy import GeoPoint
from botrf.sitestore import LinkResult, SiteStore


class TestPutSite:
    def test_store_and_retrieve(self):
        store = SiteStore()
        site = store.put_site("u1", "edif_adm", GeoPoint(8.5931, -71.1469), 1582.0)
        assert site.ground_elevation_m == 1582.0
        fetched = store.get_site("u1", "edif_adm")
        assert fetched is not None
        assert fetched.point == GeoPoint(8.5931, -71.1469)

    @pytest.mark.parametrize("bad", ["a b", "", "x" * 33, "weird!monkey", "a/b"])
    def test_invalid_names_rejected(self, bad):
        store = SiteStore()
        with pytest.raises(ValueError):
            store.put_site("u1", bad, GeoPoint(0, 0), None)

    def test_upsert_second_write_wins(self):
        store = SiteStore()
        store.put_site("u1", "spot", GeoPoint(1, 1), 10.0)
        store.put_site("u1", "spot", GeoPoint(2, 2), 20.0)
        sites = store.list_sites("u1")
        assert len(sites) == 1
        assert sites[0].point == GeoPoint(2, 2)

    def test_unknown_elevation_allowed(self):
        store = SiteStore()
        site = store.put_site("u1", "spot", GeoPoint(1, 1), None)
        assert site.ground_elevation_m is None


class TestListSites:
    def test_name_sorted(self):
        store = SiteStore()
        for name in ("zulu", "alpha", "mike"):
            store.put_site("u1", name, GeoPoint(0, 0), 0.0)
        assert [s.name for s in store.list_sites("u1")] == ["alpha", "mike", "zulu"]

    def test_unknown_owner_empty(self):
        assert SiteStore().list_sites("nobody") == []

    def test_owner_isolation(self):
        store = SiteStore()
        store.put_site("u1", "spot", GeoPoint(1, 1), 0.0)
        store.put_site("u2", "spot", GeoPoint(2, 2), 0.0)
        assert store.list_sites("u1")[0].point == GeoPoint(1, 1)
        assert store.list_sites("u2")[0].point == GeoPoint(2, 2)
        assert len(store.list_sites("u1")) == 1


class TestPersistence:
    def test_round_trip_random_sites(self, tmp_path):
        store = SiteStore(data_dir=str(tmp_path))
        rng = random.Random(99)
        for i in range(100):
            store.put_site(
                f"owner{rng.randint(1, 5)}",
                f"site_{i}",
                GeoPoint(rng.uniform(-89, 89), rng.uniform(-179, 179)),
                rng.choice([None, rng.uniform(-100, 8000)]),
            )
        original = {
            (s.owner, s.name): s
            for owner in (f"owner{i}" for i in range(1, 6))
            for s in store.list_sites(owner)
        }

        reloaded = SiteStore(data_dir=str(tmp_path))
        for (owner, name), site in original.items():
            got = reloaded.get_site(owner, name)
            assert got == site
        assert len(original) == 100

    def test_empty_store_writes_header_only(self, tmp_path):
        store = SiteStore(data_dir=str(tmp_path))
        store.persist()
        content = (tmp_path / "sites.tsv").read_text()
        assert content.splitlines()[0] == "#botrf-sites v1"
        assert len(content.splitlines()) == 1

    def test_corrupt_line_skipped(self, tmp_path):
        store = SiteStore(data_dir=str(tmp_path))
        for i in range(10):
            store.put_site("u1", f"s{i}", GeoPoint(i, i), float(i))
        path = tmp_path / "sites.tsv"
        lines = path.read_text().splitlines()
        lines[3] = "u1\tbroken\tnot_a_number\t0\t0\t2020-01-01T00:00:00+00:00"
        path.write_text("\n".join(lines) + "\n")

        reloaded = SiteStore(data_dir=str(tmp_path))
        assert len(reloaded.list_sites("u1")) == 9

    def test_result_round_trip(self, tmp_path):
        store = SiteStore(data_dir=str(tmp_path))
        result = LinkResult(
            owner="u1",
            tx="a",
            rx="b",
            tx_antenna_agl_m=50.0,
            rx_antenna_agl_m=6.0,
            frequency_mhz=5815.0,
            k_factor=4 / 3,
            model="itm",
            fspl_db=129.69,
            model_loss_db=129.55,
            shielding_db=-0.14,
            mode="Line-Of-Sight",
            created_at=datetime.now(timezone.utc),
        )
        store.put_result(result)
        reloaded = SiteStore(data_dir=str(tmp_path))
        assert reloaded.get_result("u1", "a", "b") == result

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["u1", "u2"]),
                st.from_regex(r"[A-Za-z0-9_]{1,16}", fullmatch=True),
                st.floats(min_value=-89, max_value=89, allow_nan=False),
                st.floats(min_value=-179, max_value=179, allow_nan=False),
            ),
            max_size=20,
        )
    )
    def test_round_trip_property(self, tmp_path_factory, records):
        data_dir = tmp_path_factory.mktemp("store")
        store = SiteStore(data_dir=str(data_dir))
        for owner, name, lat, lon in records:
            store.put_site(owner, name, GeoPoint(lat, lon), None)
        reloaded = SiteStore(data_dir=str(data_dir))
        for owner in ("u1", "u2"):
            assert reloaded.list_sites(owner) == store.list_sites(owner)

    def test_uniqueness_after_operations(self):
        store = SiteStore()
        rng = random.Random(5)
        for _ in range(300):
            store.put_site(
                f"u{rng.randint(1, 3)}",
                f"s{rng.randint(1, 10)}",
                GeoPoint(rng.uniform(-10, 10), rng.uniform(-10, 10)),
                None,
            )
        for owner in ("u1", "u2", "u3"):
            names = [s.name for s in store.list_sites(owner)]
            assert len(names) == len(set(names))
