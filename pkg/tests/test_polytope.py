import random
from fractions import Fraction

import pytest

from matmedian.polytope import (
    EQ,
    GE,
    LE,
    LinearSystem,
    PolytopeError,
    Row,
    certify_denominators,
    crash_to_extreme,
    enumerate_vertices,
    is_extreme,
)

F = Fraction


def two_var_fixture():
    # {v_a + v_b <= 1, v_a >= 1/2, v >= 0}; vertices (1/2,0), (1,0), (1/2,1/2)
    return LinearSystem(
        variables=("a", "b"),
        rows=[Row({"a": F(1), "b": F(1)}, LE, F(1), tag="cap"),
              Row({"a": F(1)}, GE, F(1, 2), tag="halfmass")])


def random_system(rng, n):
    names = tuple(f"v{k}" for k in range(n))
    rows = [Row({v: F(1) for v in names}, LE, F(rng.randint(1, 3)), tag="total")]
    for v in names:
        rows.append(Row({v: F(1)}, LE, F(1), tag=f"box:{v}"))
    for _ in range(rng.randint(0, n)):
        sub = [v for v in names if rng.random() < 0.5]
        if sub:
            rows.append(Row({v: F(1) for v in sub}, LE,
                            F(rng.randint(1, len(sub) + 1), 2), tag="sub"))
    return LinearSystem(variables=names, rows=rows)


def random_feasible_point(rng, system):
    # shrink a random box point toward 0 until feasible
    point = {v: F(rng.randint(0, 4), 4) for v in system.variables}
    while not system.is_feasible(point):
        point = {v: x / 2 for v, x in point.items()}
    return point


class TestCrash:
    def test_vertex_unchanged(self):
        sys_ = two_var_fixture()
        start = {"a": F(1), "b": F(0)}
        out = crash_to_extreme(sys_, start, {"a": F(1), "b": F(1)})
        assert out.values == start

    def test_descends_to_cheap_vertex(self):
        sys_ = two_var_fixture()
        out = crash_to_extreme(sys_, {"a": F(1, 2), "b": F(1, 2)},
                               {"a": F(1), "b": F(1)})
        assert sum(out.values.values()) <= F(1)
        assert is_extreme(sys_, out.values)

    def test_descends_from_interior_point(self):
        sys_ = two_var_fixture()
        out = crash_to_extreme(sys_, {"a": F(3, 4), "b": F(1, 8)},
                               {"a": F(1), "b": F(1)})
        assert is_extreme(sys_, out.values)
        assert out.values == {"a": F(1, 2), "b": F(0)}

    def test_infeasible_start_rejected(self):
        with pytest.raises(PolytopeError):
            crash_to_extreme(two_var_fixture(), {"a": F(0), "b": F(0)}, {})

    def test_property_run(self):
        rng = random.Random(31)
        for _ in range(200):
            sys_ = random_system(rng, rng.randint(2, 5))
            start = random_feasible_point(rng, sys_)
            obj = {v: F(rng.randint(-3, 3)) for v in sys_.variables}
            before_tight = set(sys_.tight_rows(start))
            out = crash_to_extreme(sys_, start, obj)
            assert is_extreme(sys_, out.values)
            value_in = sum(obj[v] * start[v] for v in sys_.variables)
            value_out = sum(obj[v] * out.values[v] for v in sys_.variables)
            assert value_out <= value_in
            assert set(out.support()) <= {v for v, x in start.items() if x != 0}
            assert before_tight <= set(sys_.tight_rows(out.values))
            again = crash_to_extreme(sys_, out.values, obj)
            assert again.values == out.values


class TestCertifyDenominators:
    def test_half_integral_true(self):
        assert certify_denominators([F(1, 2), F(0), F(1)], {1, 2})

    def test_thirds_false(self):
        assert not certify_denominators([F(1, 3), F(1)], {1, 2})

    def test_fixture_vertices_half_integral(self):
        for vp in enumerate_vertices(two_var_fixture()):
            assert certify_denominators(vp, {1, 2})


class TestEnumerate:
    def test_unit_square(self):
        sys_ = LinearSystem(("x", "y"),
                            [Row({"x": F(1)}, LE, F(1)), Row({"y": F(1)}, LE, F(1))])
        pts = {vp.as_tuple(sys_.variables) for vp in enumerate_vertices(sys_)}
        assert pts == {(F(0), F(0)), (F(0), F(1)), (F(1), F(0)), (F(1), F(1))}

    def test_simplex_three_vertices(self):
        sys_ = LinearSystem(("x", "y", "z"),
                            [Row({"x": F(1), "y": F(1), "z": F(1)}, EQ, F(1))])
        pts = {vp.as_tuple(sys_.variables) for vp in enumerate_vertices(sys_)}
        assert pts == {(F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))}

    def test_fixture_vertices(self):
        pts = {vp.as_tuple(("a", "b")) for vp in enumerate_vertices(two_var_fixture())}
        assert pts == {(F(1, 2), F(0)), (F(1), F(0)), (F(1, 2), F(1, 2))}

    def test_size_cap(self):
        names = tuple(f"v{k}" for k in range(13))
        with pytest.raises(PolytopeError):
            enumerate_vertices(LinearSystem(names, []))

    def test_every_enumerated_point_is_extreme(self):
        rng = random.Random(5)
        for _ in range(25):
            sys_ = random_system(rng, rng.randint(2, 4))
            for vp in enumerate_vertices(sys_):
                assert is_extreme(sys_, vp.values)


def test_crash_with_lazy_separator():
    # lazy row v(a)+v(b) <= 1 supplied by a separator rather than the system
    sys_ = LinearSystem(("a", "b"),
                        [Row({"a": F(1)}, LE, F(1)), Row({"b": F(1)}, LE, F(1)),
                         Row({"a": F(1), "b": F(1)}, GE, F(1, 2))])

    def sep(point):
        if point.get("a", F(0)) + point.get("b", F(0)) > 1:
            return Row({"a": F(1), "b": F(1)}, LE, F(1), tag="lazy")
        return None

    out = crash_to_extreme(sys_, {"a": F(1, 2), "b": F(1, 2)},
                           {"a": F(-1), "b": F(-2)}, separators=[sep])
    assert out.values["a"] + out.values["b"] <= F(1)
    assert sum(F(1) for r in sys_.rows if r.tag == "lazy") == 1
