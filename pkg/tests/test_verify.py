import numpy as np
from click.testing import CliRunner

from qwalk import verify, walk
from qwalk.cli import cli
from qwalk.walk import WalkState


def mirrored_step(state, coins):
    # same coin, but |0> moves right and |1> moves left
    t = state.t
    stack = coins.coin_stack(-t, t)
    coined0 = stack[:, 0, 0] * state.amp0 + stack[:, 0, 1] * state.amp1
    coined1 = stack[:, 1, 0] * state.amp0 + stack[:, 1, 1] * state.amp1
    n = 2 * t + 3
    amp0 = np.zeros(n, dtype=np.complex128)
    amp1 = np.zeros(n, dtype=np.complex128)
    amp0[2:] = coined0
    amp1[: n - 2] = coined1
    return WalkState(t + 1, amp0, amp1)


def test_all_checks_pass():
    results = verify.run_checks(instances=20, seed=3)
    assert [r.name for r in results if not r.passed] == []
    assert len(results) == len(verify._CHECKS)  # pylint: disable=protected-access
    assert 'balanced_populations' in {r.name for r in results}


def test_mutated_shift_is_caught(monkeypatch):
    monkeypatch.setattr(walk, 'step', mirrored_step)
    results = {r.name: r for r in verify.run_checks(instances=20)}
    assert not results['oracle_equivalence'].passed


def test_verify_command_fails_on_mutation(monkeypatch):
    runner = CliRunner()
    assert runner.invoke(cli, ['verify', '--instances', '10']).exit_code == 0
    monkeypatch.setattr(walk, 'step', mirrored_step)
    result = runner.invoke(cli, ['verify', '--instances', '10'])
    assert result.exit_code == 1
    assert 'FAIL  oracle_equivalence' in result.output


def test_raising_check_is_reported():
    def explodes(rng, instances):
        raise RuntimeError('kaboom')

    (result,) = verify.run_checks(instances=1, checks=[explodes])
    assert not result.passed
    assert 'RuntimeError: kaboom' in result.detail
