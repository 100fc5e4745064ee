import pytest

from tildea import (
    AssertionFailure,
    CapExceeded,
    Parameters,
    build_cycle,
    build_normal_form,
    decompose,
    enumerate_class,
    verify_theorems,
)
from tildea.census import cycle_strata


class TestEnumerate:
    def test_double_arrow_class_is_singleton(self):
        census = enumerate_class(build_cycle(1, 1))
        assert census.size == 1

    def test_non_oriented_triangle_closed(self):
        census = enumerate_class(build_cycle(1, 2))
        for quiver in census.members.values():
            decompose(quiver)
        rs = census.partition_by_rs()
        assert set(rs) == {(1, 2)}

    def test_strata_disjoint(self):
        a = enumerate_class(build_cycle(1, 4))
        b = enumerate_class(build_cycle(2, 3))
        assert not set(a.members) & set(b.members)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_class(build_cycle(2, 4), cap=3)

    def test_doc_shape(self):
        doc = enumerate_class(build_cycle(2, 2)).to_doc()
        assert doc["size"] == sum(e["count"] for e in doc["by_parameters"])
        assert doc["size"] == sum(e["count"] for e in doc["by_rs"])
        assert all(set(e) == {"params", "count"} for e in doc["by_parameters"])

    def test_members_share_vertex_count(self):
        census = enumerate_class(build_normal_form(Parameters(1, 1, 1, 0)))
        sizes = {len(quiver.vertices) for quiver in census.members.values()}
        assert sizes == {4}


class TestVerifyTheorems:
    def test_length_two(self):
        report = verify_theorems(2)
        assert report == {(1, 1): {"size": 1, "parameter_count": 1}}

    def test_length_four_strata(self):
        report = verify_theorems(4)
        assert set(report) == {(1, 3), (2, 2)}

    def test_strata_helper(self):
        assert cycle_strata(5) == [(1, 4), (2, 3)]
        assert cycle_strata(6) == [(1, 5), (2, 4), (3, 3)]

    def test_length_six_full_checks(self):
        report = verify_theorems(6)
        assert sum(v["size"] for v in report.values()) == 100

    def test_tiny_cap_overflows(self):
        with pytest.raises(CapExceeded):
            verify_theorems(5, cap=2)

    def test_assertion_failure_carries_counterexample(self, monkeypatch):
        # a broken invariant must surface as a counterexample report
        import tildea.census as census_mod
        from tildea import AGInvariant

        bogus = AGInvariant(((999, 999, 1),))
        monkeypatch.setattr(census_mod, "phi", lambda a: bogus)
        with pytest.raises(AssertionFailure) as err:
            verify_theorems(4)
        assert err.value.counterexample is not None
        assert "counterexample quiver" in str(err.value)
