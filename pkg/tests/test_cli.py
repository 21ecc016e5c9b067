import json

import pytest

import main
from core.models import CheckRecord
from services import verification_service


def _lines(capsys):
    return capsys.readouterr().out.splitlines()


def _write_config(tmp_path, data):
    path = tmp_path / "markoff.json"
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def test_enumerate_jsonl(capsys):
    assert main.run(['enumerate', '--bound', '30']) == main.EXIT_OK
    lines = [json.loads(line) for line in _lines(capsys)]
    assert len(lines) == 7
    assert [line['subject'] for line in lines[:5]] == ['(1,1,1)', '(1,1,2)', '(1,2,5)', '(1,5,13)', '(2,5,29)']
    assert lines[5]['check'] == 'oracle'
    assert lines[-1] == {'cmd': 'enumerate', 'subject': 'summary', 'check': 'overall', 'pass': True,
                         'detail': {'params': {'bound': 30}, 'records': 6, 'failures': 0}}


def test_logs_stay_off_stdout(capsys):
    assert main.run(['enumerate', '--bound', '5', '--debug']) == main.EXIT_OK
    captured = capsys.readouterr()
    assert all(line.startswith('{') for line in captured.out.splitlines())


def test_table_format(capsys):
    assert main.run(['enumerate', '--bound', '5', '--format', 'table']) == main.EXIT_OK
    out = capsys.readouterr().out
    assert "| Command" in out
    assert "PASS" in out


def test_selected_identities(capsys):
    assert main.run(['verify-identities', '--bound', '10', '--ids', '2.1,4.2']) == main.EXIT_OK
    checks = {json.loads(line)['check'] for line in _lines(capsys)}
    assert checks == {'2.1', '4.2', 'overall'}


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.jsonl"
    assert main.run(['enumerate', '--bound', '30', '--output', str(target)]) == main.EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(target.read_text(encoding='utf-8').splitlines()) == 7


def test_failures_exit_one(monkeypatch, capsys):
    def failing(bound, oracle_bound):
        return [CheckRecord('enumerate', f'bound={bound}', 'oracle', False, {'tree': 0, 'scan': 1})]

    monkeypatch.setattr(verification_service, 'enumerate_records', failing)
    assert main.run(['enumerate', '--bound', '5']) == main.EXIT_FAILED
    assert json.loads(_lines(capsys)[-1])['pass'] is False


@pytest.mark.parametrize("argv", [
    [],
    ['enumerate', '--bound', '0'],
    ['enumerate', '--bound', 'ten'],
    ['enumerate', '--jobs', '0'],
    ['enumerate', '--format', 'xml'],
    ['nothing'],
    ['verify-identities', '--bound', '5', '--ids', '2.1,bogus'],
    ['verify-identities', '--bound', '5', '--ids', ','],
    ['enumerate', '--bound', '5', '--seed-free'],
])
def test_usage_errors(argv):
    assert main.run(argv) == main.EXIT_USAGE


def test_missing_config(tmp_path):
    assert main.run(['enumerate', '--bound', '5', '--config', str(tmp_path / "absent.json")]) == main.EXIT_USAGE


def test_bad_format_in_config(tmp_path):
    path = _write_config(tmp_path, {'output': {'format': 'xml'}})
    assert main.run(['enumerate', '--bound', '5', '--config', path]) == main.EXIT_USAGE


def test_bad_jobs_in_config(tmp_path):
    path = _write_config(tmp_path, {'verification': {'jobs': 'x'}})
    assert main.run(['enumerate', '--bound', '5', '--config', path]) == main.EXIT_USAGE


def test_config_supplies_the_bound(tmp_path, capsys):
    path = _write_config(tmp_path, {'verification': {'bound': 5}})
    assert main.run(['enumerate', '--config', path]) == main.EXIT_OK
    assert json.loads(_lines(capsys)[-1])['detail']['params'] == {'bound': 5}


def test_format_override_beats_config(tmp_path, capsys):
    path = _write_config(tmp_path, {'output': {'format': 'table'}})
    assert main.run(['enumerate', '--bound', '5', '--config', path, '--format', 'jsonl']) == main.EXIT_OK
    assert _lines(capsys)[0].startswith('{')


def test_unwritable_output_exits_one(tmp_path):
    target = tmp_path / "no" / "such" / "report.jsonl"
    assert main.run(['enumerate', '--bound', '5', '--output', str(target)]) == main.EXIT_FAILED
