import pytest

from app.algebra_workbench.algebra.generators import powerset
from app.algebra_workbench.order.poset import build_poset
from app.algebra_workbench.order.properties import (cached_classification, classify, find_complements,
                                                    is_antitone, is_distributive, is_involution, lattice_witness,
                                                    resolve_complement)
from app.utils.exceptions import NotComplementedError, StructureKindError


def pentagon():
    """N5：非分配的格"""
    return build_poset(['0', 'x', 'y', 'z', '1'],
                       [('0', 'x'), ('x', 'y'), ('y', '1'), ('0', 'z'), ('z', '1')], name='N5')


class TestDistributivity:
    def test_boolean_poset_is_distributive(self, boolean_poset10):
        verdict = is_distributive(boolean_poset10)
        assert verdict.verdict
        assert verdict.per_identity == (True, True, True, True)
        assert verdict.witness is None

    def test_counterexample_witness(self, complemented10):
        verdict = is_distributive(complemented10)
        assert not verdict.verdict
        assert verdict.witness == ('a', 'b', 'c')

    @pytest.mark.parametrize('name', ['boolean16', 'complemented10', 'boolean_poset10'])
    def test_four_identities_agree(self, name, request):
        assert is_distributive(request.getfixturevalue(name)).agree

    def test_pentagon_not_distributive(self):
        verdict = is_distributive(pentagon())
        assert not verdict.verdict
        assert verdict.agree

    def test_powerset_distributive(self):
        assert is_distributive(powerset(3).poset).verdict


class TestComplements:
    def test_unique_complements_on_boolean_poset(self, boolean_poset10):
        search = find_complements(boolean_poset10)
        assert search.unique
        assert [boolean_poset10.names[y] for y in search.mapping] == [
            '1', 'aprime', 'bprime', 'cprime', 'dprime', 'a', 'b', 'c', 'd', '0']

    def test_involutive_choice_among_several(self, complemented10):
        search = find_complements(complemented10)
        assert not search.unique
        b = complemented10.resolve('b')
        assert search.candidates[b].names() == ('bprime', 'cprime')
        assert complemented10.names[search.mapping[b]] == 'bprime'
        assert complemented10.names[search.mapping[complemented10.resolve('c')]] == 'cprime'

    def test_element_without_complement(self):
        P = build_poset(['0', 'm', '1'], [('0', 'm'), ('m', '1')])
        with pytest.raises(NotComplementedError) as excinfo:
            find_complements(P)
        assert excinfo.value.witness == ('m',)

    def test_unbounded_rejected(self):
        with pytest.raises(StructureKindError):
            find_complements(build_poset(['x', 'y'], []))

    def test_resolve_complement_attaches_map(self, boolean_poset10):
        bare = build_poset(boolean_poset10.names, [(boolean_poset10.names[i], boolean_poset10.names[j]) for i, j in boolean_poset10.covers])
        assert bare.complement is None
        resolved = resolve_complement(bare)
        assert resolved.complement == boolean_poset10.complement

    def test_resolve_complement_leaves_non_complemented(self):
        P = build_poset(['0', 'm', '1'], [('0', 'm'), ('m', '1')])
        assert resolve_complement(P) is P

    def test_involution_and_antitone(self, boolean_poset10):
        assert is_involution(boolean_poset10, boolean_poset10.complement) == (True, None)
        assert is_antitone(boolean_poset10, boolean_poset10.complement) == (True, None)

    def test_identity_map_is_not_antitone(self, boolean_poset10):
        ok, witness = is_antitone(boolean_poset10, list(range(boolean_poset10.size)))
        assert not ok
        assert witness == ('0', 'a')


class TestClassification:
    def test_boolean_poset_not_lattice(self, boolean_poset10):
        result = classify(boolean_poset10)
        assert result.is_boolean_poset
        assert not result.is_lattice
        assert not result.is_boolean_algebra
        assert result.witnesses['is_lattice'] == ('a', 'b')
        assert lattice_witness(boolean_poset10) == ('a', 'b')

    def test_boolean_algebra(self, boolean16):
        result = classify(boolean16)
        assert all(result.flags().values())

    def test_complemented_non_distributive(self, complemented10):
        result = classify(complemented10)
        assert result.is_complemented
        assert not result.complement_unique
        assert not result.is_distributive
        assert not result.is_boolean_poset
        assert result.witnesses['is_distributive'] == ('a', 'b', 'c')
        assert result.witnesses['complement_unique'] == ('b', 'bprime', 'cprime')

    def test_unbounded(self):
        result = classify(build_poset(['x', 'y'], []))
        assert not result.is_bounded
        assert not result.is_complemented
        assert not result.is_boolean_poset

    def test_cached_classification_reuses_result(self, boolean_poset10):
        assert cached_classification(boolean_poset10) is cached_classification(boolean_poset10)
