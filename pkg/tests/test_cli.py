import pytest

from app.algebra_workbench.tools.workbench_cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_sum_zero_counterexample(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('complemented10'), '--prop', 'sum_zero')
        assert code == EXIT_FAILED
        assert 'b+c={0} but b≠c' in out

    def test_sum_zero_porcelain(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('complemented10'), '--prop', 'sum_zero', '--porcelain')
        assert code == EXIT_FAILED
        assert out == 'CHECK sum_zero/complemented10 FAIL b+c={0} but b≠c\n'

    def test_prop1_alias(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('complemented10'), '--prop', 'prop1')
        assert code == EXIT_FAILED
        assert 'b+c={0} but b≠c' in out

    def test_prop1_holds_on_boolean_poset(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('boolean_poset10'), '--prop', 'prop1', '--porcelain')
        assert code == EXIT_OK
        assert out == 'CHECK sum_zero/boolean_poset10 PASS\n'

    def test_random_sweep(self, capsys, tmp_path):
        path = str(tmp_path / 'z5.struct')
        assert run(capsys, 'gen', '--zmod', '5', '-o', path)[0] == EXIT_OK
        code, out, _ = run(capsys, 'check', path, '--prop', 'interpolation', '--trials', '3', '--porcelain')
        assert code == EXIT_OK
        assert out.splitlines() == [f"CHECK interpolation/Z5/n={n} PASS" for n in range(1, 6)]

    def test_fixed_points(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('complemented10'), '--prop', 'kronecker',
                           '--points', 'b:a,c:d', '--porcelain')
        assert code == EXIT_FAILED
        assert out.startswith('CHECK kronecker/complemented10 FAIL p_1(b)={0}')

    def test_zero_trials_is_usage_error(self, capsys, structure_path):
        code, _, err = run(capsys, 'check', structure_path('boolean_poset10'), '--prop', 'interpolation', '--trials', '0')
        assert code == EXIT_USAGE
        assert '--trials' in err

    @pytest.mark.parametrize('size', ['0', '-1'])
    def test_non_positive_size_is_usage_error(self, capsys, structure_path, size):
        code, out, err = run(capsys, 'check', structure_path('boolean_poset10'), '--prop', 'interpolation',
                             '--size', size, '--trials', '1')
        assert code == EXIT_USAGE
        assert out == ''
        assert '--size' in err

    def test_explicit_size(self, capsys, structure_path):
        code, out, _ = run(capsys, 'check', structure_path('boolean_poset10'), '--prop', 'interpolation',
                           '--size', '2', '--trials', '2', '--porcelain')
        assert code == EXIT_OK
        assert out == 'CHECK interpolation/boolean_poset10/n=2 PASS\n'

    def test_sum_zero_on_ring_file(self, capsys, tmp_path):
        path = str(tmp_path / 'z3.struct')
        run(capsys, 'gen', '--zmod', '3', '-o', path)
        code, _, err = run(capsys, 'check', path, '--prop', 'sum_zero')
        assert code == EXIT_USAGE
        assert '错误:' in err


class TestInterpolate:
    def test_boolean_poset_table(self, capsys, structure_path):
        code, out, _ = run(capsys, 'interpolate', structure_path('boolean_poset10'), '--points', "0:a,a:c,b:d',c':1")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0].startswith('p(x) = min_u(union(')
        assert 'p(b) = dprime  [ok: f(b) = dprime]' in lines
        assert len(lines) == 11

    def test_porcelain_one_line_per_support_point(self, capsys, structure_path):
        code, out, _ = run(capsys, 'interpolate', structure_path('boolean_poset10'), '--points', '0:a,1:b',
                           '--porcelain')
        assert code == EXIT_OK
        assert out.splitlines() == ['CHECK interpolate/boolean_poset10/p(0) PASS',
                                    'CHECK interpolate/boolean_poset10/p(1) PASS']

    def test_porcelain_counterexample(self, capsys, structure_path):
        code, out, _ = run(capsys, 'interpolate', structure_path('complemented10'), '--points', 'b:a,c:d',
                           '--porcelain')
        lines = out.splitlines()
        assert code == EXIT_FAILED
        assert lines[0] == 'CHECK interpolate/complemented10/p(b) FAIL p(b)={0} ≠ a'
        assert len(lines) == 2
        assert all(line.startswith('CHECK interpolate/complemented10/p(') for line in lines)

    def test_counterexample(self, capsys, structure_path):
        code, out, _ = run(capsys, 'interpolate', structure_path('complemented10'), '--points', 'b:a,c:d')
        assert code == EXIT_FAILED
        assert '反例: p(b)={0} ≠ a' in out

    def test_boolean_algebra_setting(self, capsys, structure_path):
        code, out, _ = run(capsys, 'interpolate', structure_path('boolean16'), '--points', 'a:b,b:a',
                           '--setting', 'boolean_algebra', '--form', 'sum')
        assert code == EXIT_OK
        assert out.startswith('p(x) = sdiff(')

    def test_ring_setting_on_poset(self, capsys, structure_path):
        code, _, err = run(capsys, 'interpolate', structure_path('boolean_poset10'), '--points', '0:a', '--setting', 'ring')
        assert code == EXIT_USAGE
        assert '环' in err


class TestEval:
    def test_subset_value(self, capsys, structure_path):
        code, out, _ = run(capsys, 'eval', structure_path('boolean_poset10'), '--term', "sdiff(x, c')", '--at', 'b')
        assert code == EXIT_OK
        assert out == '{bprime, cprime}\n'

    def test_boolean_algebra_on_non_lattice(self, capsys, structure_path):
        code, _, _ = run(capsys, 'eval', structure_path('boolean_poset10'), '--term', 'comp(x)', '--at', 'a',
                         '--setting', 'boolean_algebra')
        assert code == EXIT_USAGE

    def test_parse_error(self, capsys, structure_path):
        code, _, err = run(capsys, 'eval', structure_path('boolean_poset10'), '--term', 'sdiff(x', '--at', 'a')
        assert code == EXIT_USAGE
        assert '错误' in err


class TestOtherCommands:
    def test_validate(self, capsys, structure_path):
        code, out, _ = run(capsys, 'validate', structure_path('boolean_poset10'), '--porcelain')
        assert code == EXIT_OK
        assert out == 'CHECK validate/boolean_poset10 PASS\n'

    def test_validate_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, 'validate', str(tmp_path / 'absent.struct'))
        assert code == EXIT_USAGE
        assert '错误:' in err

    def test_validate_bad_file(self, capsys, tmp_path):
        path = tmp_path / 'bad.struct'
        path.write_text('kind poset\nelements 0 a\ncover a < a\n', encoding='utf-8')
        assert run(capsys, 'validate', str(path))[0] == EXIT_USAGE

    def test_classify_porcelain(self, capsys, structure_path):
        code, out, _ = run(capsys, 'classify', structure_path('boolean_poset10'), '--porcelain')
        assert code == EXIT_OK
        lines = out.splitlines()
        assert 'CHECK classify/boolean_poset10/is_lattice FAIL (a, b)' in lines
        assert 'CHECK classify/boolean_poset10/is_boolean_poset PASS' in lines
        assert all(line.startswith('CHECK classify/boolean_poset10/') for line in lines)

    def test_classify_ring_porcelain(self, capsys, tmp_path):
        path = str(tmp_path / 'z4.struct')
        run(capsys, 'gen', '--zmod', '4', '-o', path)
        code, out, _ = run(capsys, 'classify', path, '--porcelain')
        assert code == EXIT_OK
        assert out.splitlines() == ['CHECK classify/Z4/is_trivial FAIL', 'CHECK classify/Z4/is_commutative PASS',
                                    'CHECK classify/Z4/is_boolean_ring FAIL', 'CHECK classify/Z4/is_field FAIL']

    def test_gen_to_stdout(self, capsys):
        code, out, _ = run(capsys, 'gen', '--powerset', '2')
        assert code == EXIT_OK
        assert out.splitlines()[:3] == ['kind poset', 'name powerset2', 'elements 0 a b 1']

    def test_suite_with_config(self, capsys, tmp_path):
        config = tmp_path / 'suite.yaml'
        config.write_text('corpus:\n  - {generate: zmod 3, expect: [ring, field]}\n'
                          'bridge_powersets: [1]\nlagrange_primes: [3]\n', encoding='utf-8')
        code, out, _ = run(capsys, 'suite', '--config', str(config), '--trials', '2', '--porcelain')
        assert code == EXIT_OK
        assert out.splitlines()[0] == 'CHECK validate/zmod3 PASS'

    @pytest.mark.parametrize('argv', [[], ['frobnicate'], ['check', 'x.struct'], ['gen']])
    def test_usage_errors(self, capsys, argv):
        assert run_cli(argv) == EXIT_USAGE

    def test_help(self, capsys):
        assert run_cli(['--help']) == EXIT_OK
