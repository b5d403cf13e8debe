import pytest

from app.algebra_workbench.algebra.generators import (StructureFamily, generate, parse_generator_spec, powerset,
                                                      zmod)
from app.algebra_workbench.order.properties import classify
from app.utils.exceptions import StructureValidationError

def atom_masks(P):
    atoms = [j for i, j in P.covers if i == P.bottom]
    return [sum(1 << k for k, a in enumerate(atoms) if P.leq[a, x]) for x in range(P.size)]

class TestPowerset:
    def test_names_pair_complements(self):
        assert powerset(3).names == ('0', 'a', 'b', 'c', 'cprime', 'bprime', 'aprime', '1')

    def test_two_atoms(self):
        A = powerset(2)
        assert A.names == ('0', 'a', 'b', '1')
        assert len(A.poset.covers) == 4

    def test_rank_two_names_in_four_atoms(self):
        names = powerset(4).names
        assert names[5:11] == ('ab', 'ac', 'ad', 'adprime', 'acprime', 'abprime')

    @pytest.mark.parametrize('n', [1, 2, 3, 4])
    def test_is_boolean_algebra(self, n):
        result = classify(powerset(n).poset)
        assert result.is_boolean_algebra
        assert result.complement_unique

    def test_four_atoms_isomorphic_to_boolean16(self, boolean16):
        # 按所含原子编码，两边都应是 4 位掩码格
        for P in (powerset(4).poset, boolean16):
            masks = atom_masks(P)
            assert sorted(masks) == list(range(16))
            for x in range(P.size):
                for y in range(P.size):
                    assert bool(P.leq[x, y]) == (masks[x] & ~masks[y] == 0)

    def test_degenerate_powerset(self):
        A = powerset(0)
        assert A.names == ('0',)
        assert A.zero == A.one

    def test_out_of_range(self):
        with pytest.raises(StructureValidationError):
            powerset(7)

class TestZmod:
    def test_names_and_bounds(self):
        R = zmod(4)
        assert R.names == ('0', '1', '2', '3')
        assert R.name == 'Z4'

    @pytest.mark.parametrize('n, is_field', [(2, True), (3, True), (4, False), (5, True), (6, False),
                                             (7, True), (9, False), (11, True), (12, False)])
    def test_field_flag(self, n, is_field):
        assert zmod(n).is_field == is_field

    def test_out_of_range(self):
        with pytest.raises(StructureValidationError):
            zmod(0)

class TestGenerate:
    def test_dispatch(self):
        assert generate('zmod', 3).size == 3
        assert generate(StructureFamily.POWERSET, 2).size == 4
        assert generate('matring2').size == 16

    def test_missing_parameter(self):
        with pytest.raises(StructureValidationError):
            generate('zmod')

    def test_parse_spec(self):
        assert parse_generator_spec('zmod 6') == (StructureFamily.ZMOD, 6)
        assert parse_generator_spec('powerset 4') == (StructureFamily.POWERSET, 4)
        assert parse_generator_spec('matring2') == (StructureFamily.MATRING2, None)

    @pytest.mark.parametrize('spec', ['', 'cube 3', 'zmod', 'zmod x', 'powerset 1 2'])
    def test_bad_spec(self, spec):
        with pytest.raises(StructureValidationError):
            parse_generator_spec(spec)
