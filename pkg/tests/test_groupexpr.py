import pytest
from hypothesis import given, settings, strategies as st

from tcbounds.groupexpr import (
    BaumslagSolitar12,
    ChdResult,
    ExprError,
    Free,
    FreeAbelian,
    FreeProduct,
    Opaque,
    Product,
    PureBraid,
    Raag,
    SurfaceGroup,
    Trivial,
    chd,
    expr_from_json,
    geometric_dimension,
    is_duality,
    is_orientable_pd,
)
from tcbounds.raag import SimpleGraph


def opaque2(**kw):
    return Opaque("G", 2, 2, "assumed for the test", **kw)


BASE = [
    Trivial(),
    Free(2),
    FreeAbelian(3),
    PureBraid(4),
    BaumslagSolitar12(),
    SurfaceGroup(2),
    Raag(SimpleGraph.from_edges(3, [(1, 2), (2, 3)])),
]


class TestBaseCases:
    def test_trivial(self):
        assert chd(Trivial()).value == 0

    def test_free(self):
        assert chd(Free(0)).value == 0
        assert chd(Free(1)).value == 1
        assert chd(Free(5)).value == 1

    def test_free_abelian(self):
        for r in range(5):
            assert chd(FreeAbelian(r)).value == r

    def test_pure_braid(self):
        for n in range(2, 9):
            assert chd(PureBraid(n)).value == n - 1

    def test_bs12(self):
        assert chd(BaumslagSolitar12()).value == 2

    def test_surface(self):
        assert chd(SurfaceGroup(3)).value == 2

    def test_raag_is_clique_number(self):
        g = SimpleGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
        assert chd(Raag(g)).value == 3

    def test_every_base_exact_with_trace(self):
        for e in BASE:
            res = chd(e)
            assert res.exact
            assert res.trace


class TestFlags:
    def test_orientable_pd(self):
        assert is_orientable_pd(FreeAbelian(3)) == 3
        assert is_orientable_pd(SurfaceGroup(2)) == 2
        assert is_orientable_pd(PureBraid(2)) == 1
        assert is_orientable_pd(Free(2)) is None
        assert is_orientable_pd(BaumslagSolitar12()) is None

    def test_complete_graph_raag_is_pd(self):
        k3 = SimpleGraph.from_edges(3, [(1, 2), (1, 3), (2, 3)])
        assert is_orientable_pd(Raag(k3)) == 3
        path = SimpleGraph.from_edges(3, [(1, 2), (2, 3)])
        assert is_orientable_pd(Raag(path)) is None

    def test_duality(self):
        assert is_duality(Free(2)) == 1
        assert is_duality(PureBraid(4)) == 3
        assert is_duality(BaumslagSolitar12()) == 2
        assert is_duality(opaque2()) is None
        assert is_duality(opaque2(duality_dim=2)) == 2

    def test_product_flags(self):
        p = Product(FreeAbelian(2), SurfaceGroup(1))
        assert is_orientable_pd(p) == 4
        q = Product(Free(2), BaumslagSolitar12())
        assert is_orientable_pd(q) is None
        assert is_duality(q) == 3

    def test_opaque_flag_consistency(self):
        with pytest.raises(ExprError):
            Opaque("G", 1, 2, "why", duality_dim=2)


class TestProducts:
    def test_bs12_squared(self):
        res = chd(Product(BaumslagSolitar12(), BaumslagSolitar12()))
        assert res.value == 4
        assert any("duality" in line for line in res.trace)

    def test_pd_shift_rule(self):
        # Z x G for interval-valued G stays an interval, shifted by 1
        g = Opaque("G", 2, 3, "assumed")
        res = chd(Product(FreeAbelian(1), g))
        assert (res.lower, res.upper) == (3, 4)
        assert not res.exact

    def test_z_times_opaque2(self):
        res = chd(Product(FreeAbelian(1), opaque2()))
        assert res.value == 3

    def test_no_rule_interval(self):
        res = chd(Product(opaque2(), opaque2()))
        assert (res.lower, res.upper) == (2, 4)

    def test_interval_value_raises(self):
        res = chd(Product(opaque2(), opaque2()))
        with pytest.raises(ExprError):
            res.value

    def test_free_times_free(self):
        assert chd(Product(Free(2), Free(3))).value == 2

    @given(st.sampled_from(BASE), st.sampled_from(BASE))
    @settings(max_examples=49)
    def test_commutative_and_subadditive(self, a, b):
        ab, ba = chd(Product(a, b)), chd(Product(b, a))
        assert (ab.lower, ab.upper) == (ba.lower, ba.upper)
        ca, cb = chd(a), chd(b)
        assert ab.lower >= max(ca.lower, cb.lower)
        assert ab.upper <= ca.upper + cb.upper


class TestFreeProducts:
    def test_max_rule(self):
        assert chd(FreeProduct(Free(1), Free(1))).value == 1
        assert chd(FreeProduct(BaumslagSolitar12(), BaumslagSolitar12())).value == 2

    def test_interval_propagates(self):
        g = Opaque("G", 1, 3, "assumed")
        res = chd(FreeProduct(g, FreeAbelian(2)))
        assert (res.lower, res.upper) == (2, 3)


class TestGeometricDimension:
    def test_base_no_caveat(self):
        for e in BASE:
            dim, caveat = geometric_dimension(e)
            assert dim == chd(e).value
            assert caveat is False

    def test_opaque_dim2_caveat(self):
        dim, caveat = geometric_dimension(opaque2())
        assert (dim, caveat) == (2, True)

    def test_opaque_explicit_complex(self):
        dim, caveat = geometric_dimension(opaque2(geom_dim=2))
        assert (dim, caveat) == (2, False)

    def test_product_sums(self):
        dim, caveat = geometric_dimension(Product(FreeAbelian(1), opaque2()))
        assert (dim, caveat) == (3, True)


class TestJson:
    def test_round_trip_kinds(self):
        cases = [
            ({"kind": "trivial"}, Trivial()),
            ({"kind": "free", "rank": 2}, Free(2)),
            ({"kind": "free_abelian", "rank": 3}, FreeAbelian(3)),
            ({"kind": "pure_braid", "n": 5}, PureBraid(5)),
            ({"kind": "bs12"}, BaumslagSolitar12()),
            ({"kind": "surface", "genus": 2}, SurfaceGroup(2)),
        ]
        for data, expected in cases:
            assert expr_from_json(data) == expected

    def test_nested_product(self):
        data = {
            "kind": "product",
            "left": {"kind": "free_abelian", "rank": 1},
            "right": {"kind": "opaque", "name": "H", "chd": 2,
                      "justification": "test"},
        }
        e = expr_from_json(data)
        assert chd(e).value == 3

    def test_raag_node(self):
        e = expr_from_json({"kind": "raag", "n": 3, "edges": [[1, 2], [2, 3]]})
        assert chd(e).value == 2

    def test_unknown_kind(self):
        with pytest.raises(ExprError):
            expr_from_json({"kind": "dihedral"})

    def test_missing_field(self):
        with pytest.raises(ExprError):
            expr_from_json({"kind": "free"})

    def test_not_a_dict(self):
        with pytest.raises(ExprError):
            expr_from_json(["free", 2])


def test_invalid_interval():
    with pytest.raises(ExprError):
        ChdResult(3, 2)
