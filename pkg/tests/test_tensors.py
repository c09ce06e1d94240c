import random

import pytest

from entinv.fields import GF, QQ
from entinv.linalg import ExactMatrix
from entinv.tensors import (
    BasisError,
    FlatteningSpec,
    Shape,
    ShapeError,
    Tensor,
    all_specs,
    apply_local,
    flatten,
    from_terms,
    random_invertible,
    random_tensor,
)

GHZ_TERMS = [(1, 1, 1), (2, 2, 2)]


class TestShape:
    def test_offsets_are_row_major(self):
        s = Shape((2, 3, 4))
        assert s.offset((0, 0, 0)) == 0
        assert s.offset((0, 0, 1)) == 1  # last index fastest
        assert s.offset((0, 1, 0)) == 4
        assert s.offset((1, 0, 0)) == 12
        assert list(s.indices())[1] == (0, 0, 1)

    @pytest.mark.parametrize("dims", [(2,), (2, 2, 2, 2), (0, 2), (2, -1)])
    def test_rejects_bad_dims(self, dims):
        with pytest.raises(ShapeError):
            Shape(dims)


class TestFlatteningSpec:
    def test_complement(self):
        spec = FlatteningSpec((1, 3), 3)
        assert spec.col_factors == (2,)
        assert spec.complement().row_factors == (2,)

    @pytest.mark.parametrize("rows,n", [((), 3), ((1, 2, 3), 3), ((0,), 3), ((4,), 3), ((1, 1), 3)])
    def test_rejects_bad_specs(self, rows, n):
        with pytest.raises(ShapeError):
            FlatteningSpec(rows, n)


class TestFlatten:
    def test_epr_is_identity(self):
        epr = from_terms(Shape((2, 2)), [(1, 1), (2, 2)])
        assert flatten(epr, FlatteningSpec((1,), 2)) == ExactMatrix.identity(QQ, 2)

    def test_ghz_single_factor(self):
        ghz = from_terms(Shape((2, 2, 2)), GHZ_TERMS)
        m = flatten(ghz, FlatteningSpec((1,), 3))
        assert m == ExactMatrix.from_rows(QQ, [[1, 0, 0, 0], [0, 0, 0, 1]])

    def test_complement_is_transpose(self):
        for dims in [(2, 2), (3, 4), (2, 2, 2), (2, 3, 4)]:
            shape = Shape(dims)
            for i in range(5):
                v = random_tensor(shape, 4, seed=i)
                for spec in all_specs(shape.n):
                    assert flatten(v, spec) == flatten(v, spec.complement()).transpose()

    def test_wrong_arity_rejected(self):
        v = random_tensor(Shape((2, 2)), 2, seed=0)
        with pytest.raises(ShapeError):
            flatten(v, FlatteningSpec((1,), 3))


class TestFromTerms:
    def test_ghz_coefficients(self):
        ghz = from_terms(Shape((2, 2, 2)), GHZ_TERMS)
        expected = [QQ.zero] * 8
        expected[0] = QQ.one
        expected[7] = QQ.one
        assert list(ghz.coeffs) == expected

    def test_empty_terms_give_zero(self):
        assert from_terms(Shape((2, 3)), []).is_zero()

    def test_distinct_terms_place_unit_coefficients(self):
        v = from_terms(Shape((2, 3, 4)), [(1, 2, 3), (2, 1, 4), (1, 1, 1)])
        assert sum(1 for c in v.coeffs if c) == 3
        assert all(c == QQ.one for c in v.coeffs if c)

    def test_out_of_range_term(self):
        with pytest.raises(ShapeError):
            from_terms(Shape((2, 2, 2)), [(1, 1, 3)])
        with pytest.raises(ShapeError):
            from_terms(Shape((2, 2, 2)), [(1, 1)])

    def test_singular_basis_rejected(self):
        singular = ExactMatrix.from_rows(QQ, [[1, 1], [1, 1]])
        eye = ExactMatrix.identity(QQ, 2)
        with pytest.raises(BasisError):
            from_terms(Shape((2, 2)), [(1, 1)], bases=[singular, eye])

    def test_generic_bases_match_local_action(self):
        # the same state built two independent ways: direct expansion in
        # the given bases versus a local transform of the standard build
        shape = Shape((2, 2, 2))
        terms = [(1, 1, 1), (1, 2, 2), (2, 1, 2)]
        for seed in range(10):
            bases = [random_invertible(2, 3, seed=seed * 31 + axis) for axis in range(3)]
            direct = from_terms(shape, terms, bases=bases)
            via_action = apply_local(from_terms(shape, terms), bases)
            assert direct == via_action


class TestApplyLocal:
    def test_identity_maps_fix_everything(self):
        v = random_tensor(Shape((2, 3, 4)), 5, seed=1)
        eyes = [ExactMatrix.identity(QQ, d) for d in (2, 3, 4)]
        assert apply_local(v, eyes) == v

    def test_group_action_inverts(self):
        shape = Shape((2, 3, 4))
        v = random_tensor(shape, 5, seed=2)
        maps = [random_invertible(d, 3, seed=40 + d) for d in shape.dims]
        back = apply_local(apply_local(v, maps), [m.inverse() for m in maps])
        assert back == v

    def test_singular_map_rejected(self):
        v = random_tensor(Shape((2, 2)), 2, seed=3)
        singular = ExactMatrix.from_rows(QQ, [[1, 2], [2, 4]])
        with pytest.raises(BasisError):
            apply_local(v, [singular, ExactMatrix.identity(QQ, 2)])

    def test_shape_mismatch_rejected(self):
        v = random_tensor(Shape((2, 2)), 2, seed=3)
        with pytest.raises(ShapeError):
            apply_local(v, [ExactMatrix.identity(QQ, 3), ExactMatrix.identity(QQ, 2)])

    def test_preserves_flattening_ranks(self):
        rng = random.Random(77)
        for dims in [(2, 2), (2, 2, 2), (2, 3, 4)]:
            shape = Shape(dims)
            for trial in range(10):
                v = random_tensor(shape, 4, seed=rng.randint(0, 10**6))
                maps = [random_invertible(d, 2, seed=rng.randint(0, 10**6)) for d in dims]
                w = apply_local(v, maps)
                for spec in all_specs(shape.n):
                    assert flatten(v, spec).rank() == flatten(w, spec).rank()


class TestRankDuality:
    @pytest.mark.parametrize("dims", [(2, 2), (3, 4), (2, 2, 2), (2, 2, 3), (2, 3, 4)])
    def test_complementary_ranks_agree(self, dims):
        shape = Shape(dims)
        for i in range(200):
            v = random_tensor(shape, 5, seed=i)
            for factor in range(1, shape.n + 1):
                spec = FlatteningSpec((factor,), shape.n)
                assert flatten(v, spec).rank() == flatten(v, spec.complement()).rank()


class TestRandomSources:
    def test_random_tensor_deterministic(self):
        a = random_tensor(Shape((2, 3, 4)), 3, seed=9)
        b = random_tensor(Shape((2, 3, 4)), 3, seed=9)
        assert a == b
        assert a != random_tensor(Shape((2, 3, 4)), 3, seed=10)

    def test_random_tensor_bound_required(self):
        with pytest.raises(ValueError):
            random_tensor(Shape((2, 2)), 0, seed=1)

    def test_random_tensor_respects_bound(self):
        v = random_tensor(Shape((2, 3, 4)), 2, seed=5)
        assert all(-2 <= c <= 2 for c in v.coeffs)

    def test_random_invertible(self):
        for seed in range(20):
            m = random_invertible(3, 2, seed=seed)
            assert m.rank() == 3
        one = random_invertible(1, 5, seed=0)
        assert one.entries[0] != QQ.zero

    def test_random_invertible_over_gf(self):
        m = random_invertible(4, 3, seed=2, field=GF(5))
        assert m.rank() == 4


def test_tensor_over_gf_field():
    v = from_terms(Shape((2, 2, 2)), GHZ_TERMS, field=GF(3))
    assert flatten(v, FlatteningSpec((1,), 3)).rank() == 2


def test_scale_preserves_flattening_kernels():
    v = random_tensor(Shape((2, 3, 4)), 3, seed=4)
    w = v.scale(QQ.parse("-5/3"))
    for spec in all_specs(3):
        assert flatten(v, spec).kernel_basis() == flatten(w, spec).kernel_basis()
