import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.algebra_workbench.algebra.generators import matring2, zmod
from app.algebra_workbench.algebra.ring import build_ring
from app.utils.exceptions import RingAxiomError, StructureValidationError

Z3_ADD = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
Z3_MUL = [[0, 0, 0], [0, 1, 2], [0, 2, 1]]


class TestBuildRing:
    def test_z3(self):
        R = build_ring(['0', '1', '2'], Z3_ADD, Z3_MUL, 0, 1, name='Z3')
        assert R.is_field
        assert R.is_commutative
        assert not R.is_trivial

    def test_tables_are_read_only(self):
        R = build_ring(['0', '1', '2'], Z3_ADD, Z3_MUL, 0, 1)
        with pytest.raises(ValueError):
            R.add[0, 0] = 1

    def test_caller_tables_untouched(self):
        add = np.array(Z3_ADD)
        build_ring(['0', '1', '2'], add, Z3_MUL, 0, 1)
        add[0, 0] = 2
        assert add[0, 0] == 2

    def test_wrong_one_rejected(self):
        with pytest.raises(RingAxiomError) as excinfo:
            build_ring(['0', '1', '2'], Z3_ADD, Z3_MUL, 0, 2)
        assert excinfo.value.axiom == 'one-identity'
        assert excinfo.value.witness == ('1',)

    def test_missing_additive_inverse(self):
        with pytest.raises(RingAxiomError) as excinfo:
            build_ring(['0', '1'], [[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1)
        assert excinfo.value.axiom == 'add-inverse'
        assert excinfo.value.witness == ('1',)

    def test_shape_mismatch(self):
        with pytest.raises(StructureValidationError):
            build_ring(['0', '1'], Z3_ADD, Z3_MUL, 0, 1)

    def test_duplicate_names(self):
        with pytest.raises(StructureValidationError):
            build_ring(['0', '0', '2'], Z3_ADD, Z3_MUL, 0, 1)


class TestRingOperations:
    def test_zmod_arithmetic(self, z6):
        assert z6.names[z6.neg(2)] == '4'
        assert z6.names[z6.minus(2, 5)] == '3'
        assert z6.inverse(5) == 5
        assert z6.inverse(2) is None
        assert not z6.is_field

    def test_boolean_ring_flag(self):
        assert zmod(2).is_boolean_ring
        assert not zmod(3).is_boolean_ring

    def test_trivial_ring(self):
        R = zmod(1)
        assert R.is_trivial
        assert R.zero == R.one
        assert not R.is_field

    def test_matrix_ring_is_noncommutative(self, m2):
        assert m2.size == 16
        assert not m2.is_commutative
        assert not m2.is_field
        assert m2.names[m2.one] == '1001'
        assert m2.names[m2.zero] == '0000'
        # 幂零元 [[0,1],[0,0]] 没有逆元
        assert m2.inverse(m2.resolve('0100')) is None

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(min_value=2, max_value=12), data=st.data())
    def test_zmod_axioms_hold_pointwise(self, n, data):
        R = zmod(n)
        x, y, z = (data.draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(3))
        assert R.times(x, R.plus(y, z)) == R.plus(R.times(x, y), R.times(x, z))
        assert R.plus(x, R.neg(x)) == R.zero
        assert R.times(R.one, x) == x == R.times(x, R.one)
