from fractions import Fraction

import pytest

from entinv.fields import GF, QQ
from entinv.invariants import (
    InvariantSignature,
    general_form_decomposition,
    kernel_dim,
    signature,
    triple_constraint_matrix,
    triple_kernel_dim,
)
from entinv.linalg import ExactMatrix, InternalConsistencyError
from entinv.tensors import (
    ArityError,
    FlatteningSpec,
    Shape,
    Tensor,
    all_specs,
    apply_local,
    from_terms,
    random_invertible,
    random_tensor,
)

S222 = Shape((2, 2, 2))
GHZ = from_terms(S222, [(1, 1, 1), (2, 2, 2)])


class TestKernelDim:
    def test_zero_tensor_single_factor(self):
        for d in (2, 3, 5):
            v = Tensor.zero(QQ, Shape((2, 2, d)))
            assert kernel_dim(v, FlatteningSpec((1,), 3)) == 2
            assert kernel_dim(v, FlatteningSpec((3,), 3)) == d

    def test_ghz_third_factor(self):
        assert kernel_dim(GHZ, FlatteningSpec((3,), 3)) == 0

    def test_product_state_pair(self):
        one = from_terms(S222, [(1, 1, 1)])
        for rows in ((1, 2), (1, 3), (2, 3)):
            assert kernel_dim(one, FlatteningSpec(rows, 3)) == 3


class TestTripleConstraintMatrix:
    def test_shape_is_stacked_blocks(self):
        m = triple_constraint_matrix(random_tensor(S222, 3, seed=0))
        assert (m.rows, m.cols) == (12, 8)
        m = triple_constraint_matrix(random_tensor(Shape((2, 3, 4)), 3, seed=0))
        assert (m.rows, m.cols) == (16 + 9 + 4, 24)

    def test_zero_tensor_gives_zero_matrix(self):
        v = Tensor.zero(QQ, S222)
        m = triple_constraint_matrix(v)
        assert all(x == QQ.zero for x in m.entries)
        assert triple_kernel_dim(v) == 8

    def test_product_state_forces_four_coordinates(self):
        # for the state with a single unit coefficient at (1,1,1) the
        # constraints reduce to w111 = w112 = w121 = w211 = 0
        v = from_terms(S222, [(1, 1, 1)])
        m = triple_constraint_matrix(v)
        basis = m.kernel_basis()
        assert len(basis) == 4
        forced = [S222.offset(x) for x in ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))]
        for vec in basis:
            assert all(vec[i] == QQ.zero for i in forced)

    def test_rejects_bipartite_input(self):
        with pytest.raises(ArityError):
            triple_constraint_matrix(random_tensor(Shape((2, 2)), 2, seed=1))


class TestTripleKernelDim:
    def test_ghz(self):
        assert triple_kernel_dim(GHZ) == 0

    def test_three_term_state(self):
        v = from_terms(S222, [(1, 1, 1), (1, 2, 2), (2, 1, 2)])
        assert triple_kernel_dim(v) == 1

    def test_on_taller_third_factor(self):
        v = from_terms(Shape((2, 2, 3)), [(1, 1, 1), (2, 2, 1)])
        assert triple_kernel_dim(v) == 6


class TestSignature:
    def test_zero_234(self):
        sig = signature(Tensor.zero(QQ, Shape((2, 3, 4))))
        assert sig.singles == (2, 3, 4)
        assert sig.pairs == (6, 8, 12)
        assert sig.triple == 24

    def test_three_term_233(self):
        v = from_terms(Shape((2, 3, 3)), [(1, 1, 1), (1, 2, 2), (2, 3, 1)])
        sig = signature(v)
        assert sig.singles == (0, 0, 1)
        assert sig.triple == 5

    def test_epr(self):
        epr = from_terms(Shape((2, 2)), [(1, 1), (2, 2)])
        sig = signature(epr)
        assert sig.singles == (0, 0)
        assert sig.pairs is None and sig.triple is None
        assert str(sig) == "(0,0)"

    def test_str_form(self):
        assert str(signature(GHZ)) == "(0,0,0;2,2,2;0)"

    def test_three_qubit_case_families(self):
        # the three two-term states with one extra direction share triple dim 3
        for terms, singles in [
            ([(1, 1, 1), (2, 2, 1)], (0, 0, 1)),
            ([(1, 1, 1), (2, 1, 2)], (0, 1, 0)),
            ([(1, 1, 1), (1, 2, 2)], (1, 0, 0)),
        ]:
            sig = signature(from_terms(S222, terms))
            assert sig.singles == singles
            assert sig.triple == 3

    def test_local_invariance_sample(self):
        v = from_terms(S222, [(1, 1, 1), (1, 2, 2), (2, 1, 2)])
        base = signature(v)
        for seed in range(10):
            maps = [random_invertible(2, 2, seed=seed * 7 + axis) for axis in range(3)]
            assert signature(apply_local(v, maps)) == base

    def test_scaling_invariance(self):
        for dims in [(2, 2), (2, 3, 4)]:
            v = random_tensor(Shape(dims), 3, seed=8)
            base = signature(v)
            for c in (Fraction(-1, 3), Fraction(7, 2), Fraction(5)):
                assert signature(v.scale(c)) == base

    def test_signature_over_gf(self):
        v = from_terms(S222, [(1, 1, 1), (2, 2, 2)], field=GF(5))
        assert signature(v).key() == (0, 0, 0, 0)

    def test_duality_violation_raises(self):
        with pytest.raises(InternalConsistencyError):
            InvariantSignature(dims=(2, 2), singles=(1, 0))
        with pytest.raises(InternalConsistencyError):
            InvariantSignature(dims=(2, 2, 2), singles=(0, 0, 0), pairs=(2, 2, 3), triple=0)


def _expand(pairs, nrows, ncols):
    out = [QQ.zero] * (nrows * ncols)
    for w, wp in pairs:
        for r in range(nrows):
            for c in range(ncols):
                out[r * ncols + c] = out[r * ncols + c] + w[r] * wp[c]
    return out


class TestDecomposition:
    def test_zero_tensor_empty(self):
        assert general_form_decomposition(Tensor.zero(QQ, S222), FlatteningSpec((1,), 3)) == []

    def test_epr_two_pairs(self):
        epr = from_terms(Shape((2, 2)), [(1, 1), (2, 2)])
        spec = FlatteningSpec((1,), 2)
        pairs = general_form_decomposition(epr, spec)
        assert len(pairs) == 2
        assert _expand(pairs, 2, 2) == list(epr.coeffs)

    def test_ghz_pairs_are_independent(self):
        spec = FlatteningSpec((1,), 3)
        pairs = general_form_decomposition(GHZ, spec)
        assert len(pairs) == 2
        assert ExactMatrix.from_rows(QQ, [w for w, _ in pairs]).rank() == 2
        assert ExactMatrix.from_rows(QQ, [wp for _, wp in pairs]).rank() == 2

    @pytest.mark.parametrize("dims", [(2, 3), (2, 2, 2), (2, 3, 4)])
    def test_reconstruction_oracle_on_random_tensors(self, dims):
        # multiply the pairs back out by hand and compare coefficient arrays
        shape = Shape(dims)
        for seed in range(15):
            v = random_tensor(shape, 4, seed=seed)
            for spec in all_specs(shape.n):
                m_rows = 1
                for i in spec.row_factors:
                    m_rows *= dims[i - 1]
                m_cols = shape.size // m_rows
                pairs = general_form_decomposition(v, spec)
                assert len(pairs) == m_rows - kernel_dim(v, spec)
                flat = _expand(pairs, m_rows, m_cols)
                # reassemble in tensor coefficient order
                from entinv.tensors import flatten

                target = flatten(v, spec)
                assert flat == target.entries

    def test_span_dimensions_match_rank(self):
        v = random_tensor(Shape((2, 3, 4)), 3, seed=21)
        for spec in all_specs(3):
            pairs = general_form_decomposition(v, spec)
            if not pairs:
                continue
            left = ExactMatrix.from_rows(QQ, [w for w, _ in pairs])
            right = ExactMatrix.from_rows(QQ, [wp for _, wp in pairs])
            assert left.rank() == len(pairs)
            assert right.rank() == len(pairs)
