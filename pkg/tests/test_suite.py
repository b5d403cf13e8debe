import pytest

from app.algebra_workbench.verify.checks import CheckReport
from app.algebra_workbench.verify.suite import SuiteConfig, expect_failure, run_suite
from app.config.settings import STRUCTURES_DIR
from app.utils.exceptions import ConfigError

SMALL_SUITE = """\
seed: 7
trials: 3
max_support: 2
workers: 2
structures_dir: {structures_dir}
corpus:
  - file: boolean_poset10.struct
    expect: [boolean_poset]
  - {{generate: powerset 2, expect: boolean_algebra}}
  - {{generate: zmod 3, expect: [ring, field]}}
bridge_trials: 2
bridge_powersets: [1]
lagrange_trials: 2
lagrange_primes: [3]
golden:
  - structure: boolean_poset10.struct
    points: 0:a,1:b
evaluations:
  - structure: boolean_poset10.struct
    term: sdiff(x, cprime)
    at: b
    expect: "{{bprime, cprime}}"
expected_failures:
  - structure: complemented10.struct
    check: sum_zero
    witness: [b, c]
"""


@pytest.fixture
def small_suite(tmp_path):
    def write(text=SMALL_SUITE):
        path = tmp_path / 'suite.yaml'
        path.write_text(text.format(structures_dir=STRUCTURES_DIR), encoding='utf-8')
        return path
    return write


class TestSuiteConfig:
    def test_default_config_loads(self):
        config = SuiteConfig.load()
        assert len(config.corpus) == 19
        assert config.corpus[0].label == 'boolean16'
        assert config.corpus[3].label == 'powerset1'
        assert len(config.golden) == 3
        assert len(config.expected_failures) == 4

    def test_overrides(self, small_suite):
        config = SuiteConfig.load(small_suite(), trials=1, seed=None)
        assert config.trials == 1
        assert config.seed == 7
        assert config.corpus[1].expect == ['boolean_algebra']

    @pytest.mark.parametrize('key', ['trials', 'max_support', 'workers'])
    def test_non_positive_rejected(self, small_suite, key):
        with pytest.raises(ConfigError, match=key):
            SuiteConfig.load(small_suite(), **{key: 0})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match='找不到'):
            SuiteConfig.load(tmp_path / 'nope.yaml')

    def test_invalid_yaml(self, small_suite):
        with pytest.raises(ConfigError, match='YAML'):
            SuiteConfig.load(small_suite('corpus: [unclosed\n'))

    def test_unknown_key(self, small_suite):
        with pytest.raises(ConfigError, match='colour'):
            SuiteConfig.load(small_suite(SMALL_SUITE + 'colour: blue\n'))

    def test_unknown_expectation(self, small_suite):
        with pytest.raises(ConfigError, match='lattice'):
            SuiteConfig.load(small_suite(SMALL_SUITE.replace('[boolean_poset]', '[lattice]')))

    def test_case_missing_field(self, small_suite):
        with pytest.raises(ConfigError, match='witness'):
            SuiteConfig.load(small_suite(SMALL_SUITE.replace('    witness: [b, c]\n', '')))


class TestRunSuite:
    def test_small_suite_passes(self, small_suite):
        result = run_suite(SuiteConfig.load(small_suite()))
        lines = result.porcelain().splitlines()
        assert result.passed
        assert result.exit_code == 0
        assert lines[0] == 'CHECK validate/boolean_poset10 PASS'
        assert 'CHECK roundtrip/boolean_poset10 PASS' in lines
        assert 'CHECK sum_zero/boolean_poset10 PASS' in lines
        assert 'CHECK interpolation/boolean_poset10/n=2 PASS' in lines
        assert 'CHECK kronecker/powerset2/n=1 PASS' in lines
        assert 'CHECK bridge/powerset1 PASS' in lines
        assert 'CHECK lagrange/Z3 PASS' in lines
        assert 'CHECK golden/boolean_poset10 PASS' in lines
        assert 'CHECK golden-eval/boolean_poset10 PASS' in lines
        assert lines[-1] == 'CHECK expect-fail:sum_zero/complemented10 PASS'

    def test_porcelain_is_deterministic(self, small_suite):
        first = run_suite(SuiteConfig.load(small_suite())).porcelain()
        second = run_suite(SuiteConfig.load(small_suite(), workers=1)).porcelain()
        assert first == second

    def test_mislabeled_structure_fails(self, small_suite):
        text = SMALL_SUITE.replace('file: boolean_poset10.struct\n    expect: [boolean_poset]',
                                   'file: complemented10.struct\n    expect: [boolean_poset]')
        result = run_suite(SuiteConfig.load(small_suite(text)))
        assert result.exit_code == 1
        failing = [line for line in result.porcelain().splitlines() if ' FAIL' in line]
        assert failing[0].startswith('CHECK validate/complemented10 FAIL not boolean_poset')
        assert '失败 1' in result.summary()

    def test_missing_structure_file(self, small_suite):
        config = SuiteConfig.load(small_suite(SMALL_SUITE.replace('boolean_poset10.struct\n    expect',
                                                                  'missing.struct\n    expect')))
        with pytest.raises(ConfigError, match='missing.struct'):
            run_suite(config)


class TestExpectFailure:
    def test_unexpected_pass(self):
        wrapped = expect_failure(CheckReport('sum_zero', 'boolean_poset10', passed=True), ['b', 'c'])
        assert not wrapped.passed
        assert wrapped.witness == 'check unexpectedly passed'

    def test_wrong_witness(self):
        report = CheckReport('sum_zero', 'complemented10', passed=False, witness='a+d={0}', witness_key=('a', 'd'))
        wrapped = expect_failure(report, ['b', 'c'])
        assert not wrapped.passed
        assert wrapped.name == 'expect-fail:sum_zero/complemented10'
