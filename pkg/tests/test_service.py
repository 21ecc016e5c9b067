import pytest

from core.exceptions import BadInput, NoSolution, UnknownIdentity
from core.observable import CHECK_COMPLETED, SUITE_FINISHED, SUITE_STARTED, Observable
from services import verification_service
from services.verification_service import (SUITE_IDENTITIES, SUITES, Task, VerificationService, execute,
                                           enumerate_records, residue_records, solution_records)


def _no_solution(q):
    raise NoSolution(f"nothing for {q}")


@pytest.fixture
def service(config):
    return VerificationService(config)


class TestTaskBodies:
    def test_enumerate_records(self):
        records = enumerate_records(30)
        assert [r.subject for r in records[:-1]] == ['(1,1,1)', '(1,1,2)', '(1,2,5)', '(1,5,13)', '(2,5,29)']
        assert all(r.passed for r in records)
        assert records[-1].check == 'oracle'
        assert records[-1].detail == {'tree': 5, 'scan': 5, 'oracle_bound': 30}

    def test_oracle_is_capped(self):
        records = enumerate_records(30, oracle_bound=5)
        assert len(records) == 6
        assert records[-1].passed
        assert records[-1].detail == {'tree': 3, 'scan': 3, 'oracle_bound': 5}

    def test_solution_records(self):
        count, transport = solution_records(15)
        assert count.passed and transport.passed
        assert count.detail == {'classes': 2, 'residues': 2, 'expected': 2}

    def test_q_without_residues(self):
        records = solution_records(9)
        assert len(records) == 1
        assert records[0].passed
        assert records[0].detail == {'classes': 0, 'residues': 0}

    def test_residue_records(self):
        (record,) = residue_records(200)
        assert record.passed
        assert record.subject == 'n=1..200'

    def test_residue_records_up_to_ten_thousand(self):
        (record,) = residue_records(10000)
        assert record.passed
        assert record.detail == {}

    def test_residue_chunk(self):
        (record,) = residue_records(200, n_min=101)
        assert record.passed
        assert record.subject == 'n=101..200'

    def test_search_disagreement_fails_the_count(self, monkeypatch):
        monkeypatch.setattr(verification_service, 'search_equivalence', lambda x, y: None)
        count, _ = solution_records(15)
        assert not count.passed
        assert 'unrelated shift' in count.detail

    def test_errors_become_failing_records(self):
        (record,) = execute(Task('solutions', 'q=3', 'count', _no_solution, (3,)))
        assert not record.passed
        assert record.detail == {'error': 'NoSolution: nothing for 3'}


class TestService:
    def test_jobs_must_be_positive(self, config):
        config.set('verification.jobs', 0)
        with pytest.raises(BadInput):
            VerificationService(config)

    def test_default_bounds(self, service):
        assert service.default_bound('enumerate') == 1000
        assert service.default_bound('solutions') == 300
        assert service.default_bound('orbit') == 100

    def test_enumerate(self, service):
        report = service.run('enumerate', 30)
        assert report.passed
        assert len(report.records) == 6
        assert report.params == {'bound': 30}

    def test_solutions_suite(self, service, config):
        config.set('solutions.residue_n_max', 15)
        report = service.run('solutions', 15)
        # q = 3, 6, 15 carry a transport record, q = 9, 12 have no classes
        assert len(report.records) == 9
        assert report.records[-1].subject == 'n=1..15'
        assert report.passed

    def test_solution_tasks(self, service, config):
        config.set('solutions.q_cap', 9)
        tasks = service.build_tasks('solutions', 300)
        assert [t.subject for t in tasks] == ['q=3', 'q=6', 'q=9', 'n=1..2500', 'n=2501..5000',
                                             'n=5001..7500', 'n=7501..10000']

    def test_enumerate_uses_oracle_bound(self, service, config):
        config.set('verification.oracle_bound', 5)
        report = service.run('enumerate', 30)
        assert report.passed
        assert report.records[-1].detail['oracle_bound'] == 5

    def test_uniqueness_suite(self, service):
        report = service.run('uniqueness', 13)
        assert report.passed
        assert report.records[0].check == 'uniqueness'
        assert {r.check for r in report.records[1:]} == set(SUITE_IDENTITIES['uniqueness'])

    @pytest.mark.parametrize("suite", ['profile', 'cycles', 'normform'])
    def test_identity_suites(self, service, suite):
        report = service.run(suite, 13)
        assert report.passed
        assert {r.check for r in report.records} == set(SUITE_IDENTITIES[suite])

    def test_orbit_suite(self, service, config):
        config.set('orbit.uv_window', 4)
        report = service.run('orbit', 5)
        assert report.passed
        assert {r.check for r in report.records} == {'9.2', '9.gram', '10.7'}

    def test_selected_identities(self, service):
        report = service.run('verify-identities', 5, ids=['2.1', '1.2'])
        assert report.passed
        assert report.params == {'bound': 5, 'ids': ['2.1', '1.2']}
        checks = [r.check for r in report.records]
        assert checks.index('1.2') > checks.index('2.1')

    def test_unknown_identity(self, service):
        with pytest.raises(UnknownIdentity):
            service.run('verify-identities', 5, ids=['2.1', 'bogus'])

    @pytest.mark.parametrize("suite, bound", [('nothing', 5), ('enumerate', 0)])
    def test_bad_arguments(self, service, suite, bound):
        with pytest.raises(BadInput):
            service.run(suite, bound)

    def test_events(self, service):
        events = []
        service.add_observer(SUITE_STARTED, lambda suite, params: events.append(('start', suite)))
        service.add_observer(CHECK_COMPLETED, lambda record: events.append(('check', record.subject)))
        service.add_observer(SUITE_FINISHED, lambda report: events.append(('finish', len(report.records))))
        service.run('enumerate', 5)
        assert events[0] == ('start', 'enumerate')
        assert [e for e in events if e[0] == 'check'] == [
            ('check', '(1,1,1)'), ('check', '(1,1,2)'), ('check', '(1,2,5)'), ('check', 'bound=5')]
        assert events[-1] == ('finish', 4)

    def test_parallel_run_keeps_order(self, config):
        serial = VerificationService(config).run('verify-identities', 5, ids=['2.1', '4.2'])
        config.set('verification.jobs', 2)
        parallel = VerificationService(config).run('verify-identities', 5, ids=['2.1', '4.2'])
        assert [r.to_dict() for r in parallel.records] == [r.to_dict() for r in serial.records]

    def test_run_all(self, service, config):
        config.set('orbit.uv_window', 4)
        config.set('solutions.residue_n_max', 50)
        report = service.run('all', 5)
        assert report.command == 'all'
        assert report.passed
        assert {r.cmd for r in report.records} == set(SUITES)


class TestObservable:
    def test_failing_observer_does_not_stop_others(self):
        seen = []
        observable = Observable()

        def broken(record):
            raise RuntimeError("boom")

        observable.add_observer(CHECK_COMPLETED, broken)
        observable.add_observer(CHECK_COMPLETED, seen.append)
        observable.notify_observers(CHECK_COMPLETED, 1)
        assert seen == [1]

    def test_remove_and_clear(self):
        seen = []
        observable = Observable()
        observable.add_observer(CHECK_COMPLETED, seen.append)
        observable.remove_observer(CHECK_COMPLETED, seen.append)
        observable.notify_observers(CHECK_COMPLETED, 1)
        observable.add_observer(SUITE_FINISHED, seen.append)
        observable.add_observer(SUITE_STARTED, seen.append)
        observable.clear_observers(SUITE_STARTED)
        assert observable.observer_count(SUITE_STARTED) == 0
        assert observable.observer_count(SUITE_FINISHED) == 1
        observable.clear_observers()
        observable.notify_observers(SUITE_FINISHED, 2)
        assert seen == []

    def test_unknown_event(self):
        with pytest.raises(ValueError, match="unknown progress event"):
            Observable().add_observer('tool_saved', print)
