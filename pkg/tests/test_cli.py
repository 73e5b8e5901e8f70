import csv

import pytest
from click.testing import CliRunner

from cli import cli as cli_module
from cli.cli import cli, run
from cli.commands import dominance
from core.errors import EXIT_OK, EXIT_PROPERTY_VIOLATION, EXIT_SEARCH_SPACE, EXIT_VALIDATION, InvalidInputError
from core.security import verify_manifest
from schemas.scenario_schema import ScenarioConfig
from schemas.strategic_schema import DominanceSummary


def _rows(path):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.DictReader(f))


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


class TestClear:

    def test_reference_profile(self, runner, tmp_path, scenario_data, write_scenario):
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['clear', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK, result.output
        row = _rows(out / 'clearing.csv')[0]
        assert (row['pi_0'], row['pi_1'], row['pi_2']) == ('11.7142857143', '14.2857142857', '4')
        assert row['Lambda'] == '0.142857142857'
        assert row['regime'] == 'scarcity'
        assert {p.name for p in out.iterdir()} == {'clearing.csv', 'results.json', 'manifest.json'}

    def test_empty_claim_list(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data['profiles'] = [[]]
        result = runner.invoke(cli, ['clear', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_VALIDATION

    def test_no_profiles(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data['profiles'] = []
        result = runner.invoke(cli, ['clear', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_VALIDATION

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ['clear', '--config', str(tmp_path / 'nada.json')])
        assert result.exit_code == EXIT_VALIDATION


class TestDominance:

    def test_linear_rule_passes(self, runner, tmp_path, scenario_data, write_scenario):
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['dominance', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK, result.output
        assert _rows(out / 'dominance.csv')[0]['violations'] == '0'
        assert _rows(out / 'nash.csv')[0]['holds'] == 'True'

    def test_square_rule_kink_is_reported(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data.update(alphas=[2.0], profiles=[[11.0, 12.0, 7.0]])
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['dominance', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK
        first_player = _rows(out / 'best_responses.csv')[0]
        assert first_player['monotone'] == 'False'
        assert first_player['kink_claim'] == '11'

    def test_violation_at_linear_rule_fails(self, runner, tmp_path, scenario_data, write_scenario, monkeypatch):
        def failing_sweep(ent, rule, trials, grid_size, seed, M, **kwargs):
            return DominanceSummary(alpha=rule.alpha, theorem_mode=True, trials=trials, evaluations=1,
                                    violations=1, argmax_failures=0, worst_drop=0.5)
        monkeypatch.setattr(dominance, 'dominance_sweep', failing_sweep)
        result = runner.invoke(cli, ['dominance', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_PROPERTY_VIOLATION

    def test_requires_bound_above_entitlements(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data['M'] = 10.0
        result = runner.invoke(cli, ['dominance', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_VALIDATION

    def test_requires_seed(self, runner, tmp_path, scenario_data, write_scenario):
        del scenario_data['seed']
        result = runner.invoke(cli, ['dominance', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_VALIDATION


class TestCoalition:

    def test_bound_holds(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data['coalitions'] = [[0, 1]]
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['coalition', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK, result.output
        row = _rows(out / 'coalitions.csv')[0]
        assert row['coalition'] == '0-1'
        assert row['bound_satisfied'] == 'True'

    def test_search_space_cap(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data.update(coalitions=[[0, 1, 2]], grid_sizes={'coalition': 300})
        result = runner.invoke(cli, ['coalition', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_SEARCH_SPACE


class TestBoundary:

    def test_reports_are_reproducible(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data.update(alphas=[1.0, 2.0], profiles=[[11.0, 12.0, 7.0]])
        path = str(write_scenario(scenario_data))
        for name in ('a', 'b'):
            result = runner.invoke(cli, ['boundary', '--config', path, '--out', str(tmp_path / name)])
            assert result.exit_code == EXIT_OK, result.output
        for table in ('continuity.csv', 'jumps.csv', 'noise_bias.csv'):
            assert (tmp_path / 'a' / table).read_bytes() == (tmp_path / 'b' / table).read_bytes()
        jumps = _rows(tmp_path / 'a' / 'jumps.csv')
        assert jumps[1]['sup_norm'] == '0.4'

    def test_jump_floor_comes_from_scenario(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data.update(alphas=[2.0], tolerances={'jump_floor': 10.0})
        result = runner.invoke(cli, ['boundary', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_PROPERTY_VIOLATION
        assert 'salto mínimo' in result.output


class TestPolicy:

    def test_ledger_and_alerts(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data['policy'] = {
            'collar': {'kappa_lo': 0.0, 'kappa_hi': 200.0, 'kappa_schedule': [2.0, 100.0],
                       'p_bar': [100.0, 100.0], 'lambda_floor': 0.3, 'p_forward': 25.0},
            'governance': {'max_lambda': 0.5, 'max_consecutive_scarcity': 5},
            'periods': [[12.0, 15.0, 4.0], [20.0, 20.0, 5.0]],
            'waiting': {'kind': 'discrete', 'atoms': [{'X': 10.0, 'I': 5.0, 'kappa': 2.0}]},
            'waiting_samples': 100,
        }
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['policy', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK, result.output
        ledger = _rows(out / 'ledger.csv')
        assert ledger[0]['penalty_1'] == '1.42857142857'
        assert _rows(out / 'waiting_cost.csv')[0]['mean'] == '1'
        alerts = (out / 'alerts.log').read_text(encoding='utf-8').splitlines()
        assert len(alerts) == 1 and alerts[0].startswith('t=1 lambda_breach')

    def test_requires_policy_section(self, runner, tmp_path, scenario_data, write_scenario):
        result = runner.invoke(cli, ['policy', '--config', str(write_scenario(scenario_data)),
                                     '--out', str(tmp_path / 'out')])
        assert result.exit_code == EXIT_VALIDATION


class TestCompare:

    def test_constrained_equal_awards_fixture(self, runner, tmp_path, scenario_data, write_scenario):
        scenario_data.update(
            profiles=[],
            problems=[{'claims': [1.0, 100.0, 100.0], 'entitlements': [1.0, 50.0, 50.0], 'estate': 2.0}],
        )
        out = tmp_path / 'out'
        result = runner.invoke(cli, ['compare', '--config', str(write_scenario(scenario_data)), '--out', str(out)])
        assert result.exit_code == EXIT_OK, result.output
        awards = {row['rule']: row for row in _rows(out / 'awards.csv')}
        assert awards['cea']['a_0'] == '0.666666666667'
        assert awards['slack_clearing']['a_0'] == '1'
        rates = {row['rule']: row['violation_rate'] for row in _rows(out / 'nls_separation.csv')}
        assert rates['slack_clearing'] == '0'


class TestRun:

    def test_run_writes_verifiable_manifest(self, tmp_path, scenario_data):
        config = ScenarioConfig.model_validate(scenario_data)
        bundle = run(config, 'clear', out_dir=str(tmp_path / 'out'), seed=99)
        assert bundle.exit_code == EXIT_OK
        assert bundle.manifest.seed == 99
        assert verify_manifest(tmp_path / 'out' / 'manifest.json')

    def test_unknown_command(self, tmp_path, scenario_data):
        with pytest.raises(InvalidInputError):
            run(ScenarioConfig.model_validate(scenario_data), 'plot', out_dir=str(tmp_path))

    def test_every_command_is_registered(self):
        assert set(cli_module.EXECUTORES) == {'clear', 'dominance', 'coalition', 'boundary', 'policy', 'compare'}
        assert set(cli.commands) == set(cli_module.EXECUTORES)
