"""
Verification service: builds the check suites behind each CLI subcommand,
runs them serially or in a process pool and reports progress to observers.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from config.app_config import AppConfig, get_config
from core.arith import factorize, sqrt_minus_one
from core.exceptions import BadInput, MarkoffError
from core.identities import get_entry, identity_ids, subjects_for, verify_identity
from core.models import CheckRecord, Report
from core.observable import Observable, SUITE_STARTED, CHECK_COMPLETED, SUITE_FINISHED
from core.oracles import scan_markoff_triples, scan_sqrt_minus_one
from core.solutions import (equivalent, root_solution, search_equivalence, solve_root_system,
                            transport_solution)
from core.tree import all_orientations, enumerate_triples, is_markoff
from core.uniqueness import verify_uniqueness

logger = logging.getLogger(__name__)

SUITES = ('enumerate', 'verify-identities', 'solutions', 'profile', 'uniqueness',
          'cycles', 'normform', 'orbit')

# Каталожные тождества, входящие в наборы подкоманд
SUITE_IDENTITIES: Dict[str, Sequence[str]] = {
    'profile': ('6.4', '6.28', 'cor6.9'),
    'uniqueness': ('3.4', '5.1', '5.4', '5.5'),
    'cycles': ('7.2', '7.6', '7.31'),
    'normform': ('8.8', '8.4'),
    'orbit': ('9.2', '9.gram', '10.7'),
}

# Граница по умолчанию, если --bound не задан
BOUND_KEYS: Dict[str, str] = {
    'enumerate': 'verification.bound',
    'verify-identities': 'verification.identity_bound',
    'solutions': 'solutions.q_max',
    'profile': 'profile.m_max',
    'uniqueness': 'verification.bound',
    'cycles': 'qforms.m_max',
    'normform': 'orbit.m_max',
    'orbit': 'orbit.uv_b_max',
}

# Solutions are transported to every MT-matrix of triples up to this member
TRANSPORT_BOUND = 13

ORACLE_BOUND = 1000

# n per residue scan task
RESIDUE_CHUNK = 2500


@dataclass(frozen=True)
class Task:
    """One unit of work; fn must be module-level so the pool can pickle it"""
    cmd: str
    subject: str
    check: str
    fn: Callable[..., List[CheckRecord]]
    args: tuple = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)


def execute(task: Task) -> List[CheckRecord]:
    """A violated precondition becomes a failing record; the suite goes on"""
    try:
        return task.fn(*task.args, **task.kwargs)
    except MarkoffError as e:
        logger.error(f"{task.cmd} {task.check} on {task.subject}: {e}")
        return [CheckRecord(task.cmd, task.subject, task.check, False,
                            {'error': f"{type(e).__name__}: {e}"})]


# --- task bodies ---

def identity_records(cmd: str, identity_id: str, subject: Any, **params: Any) -> List[CheckRecord]:
    return [CheckRecord.from_identity(cmd, verify_identity(identity_id, subject, **params))]


def enumerate_records(bound: int, oracle_bound: int = ORACLE_BOUND) -> List[CheckRecord]:
    """
    Каждая тройка дерева плюс сравнение с перебором.
    The scan only covers 𝔠 ≤ min(bound, oracle_bound).
    """
    triples = enumerate_triples(bound)
    records = [CheckRecord('enumerate', t.display_name(), 'markoff', is_markoff(*t), t.to_dict())
               for t in triples]
    cap = min(bound, oracle_bound)
    covered = [t for t in triples if t.c_frak <= cap]
    scanned = scan_markoff_triples(cap)
    records.append(CheckRecord('enumerate', f'bound={bound}', 'oracle', covered == scanned,
                               {'tree': len(covered), 'scan': len(scanned), 'oracle_bound': cap}))
    return records


def solution_records(q: int) -> List[CheckRecord]:
    """Class count for one q against brute-force residues and the 2^l count"""
    third = q // 3
    solutions = solve_root_system(q)
    residues = scan_sqrt_minus_one(third)
    detail: Dict[str, Any] = {'classes': len(solutions), 'residues': len(residues)}
    ok = [x.eps for x in solutions] == residues
    if residues and third % 4:
        expected = 2 ** len(factorize(third).odd_primes)
        detail['expected'] = expected
        ok = ok and len(solutions) == expected

    # distinct classes never relate, a shift by q/3 always does;
    # the residue criterion must agree with the exhaustive matrix search
    for i, x in enumerate(solutions):
        for y in solutions[i + 1:]:
            found, searched = equivalent(x, y), search_equivalence(x, y)
            if found != searched:
                detail.setdefault('criteria disagree', []).append([x.eps, y.eps])
                ok = False
            if found is not None or searched is not None:
                detail['related classes'] = x.eps
                ok = False
        shifted = root_solution(q, x.eps + third)
        found, searched = equivalent(x, shifted), search_equivalence(x, shifted)
        if found is None or found != searched:
            detail['unrelated shift'] = x.eps
            ok = False
    records = [CheckRecord('solutions', f'q={q}', 'count', ok, detail)]

    if solutions:
        broken = [repr(o) for o in all_orientations(TRANSPORT_BOUND)
                  if not transport_solution(solutions[0], o).validate().passed]
        records.append(CheckRecord('solutions', f'q={q}', 'transport', not broken,
                                   {'failures': broken} if broken else {}))
    return records


def residue_records(n_max: int, n_min: int = 1) -> List[CheckRecord]:
    """sqrt_minus_one against the scan, and exactly 2^l roots when n ≢ 0 (mod 4)"""
    mismatches = []
    wrong_counts = []
    for n in range(n_min, n_max + 1):
        roots = sqrt_minus_one(n)
        if roots != scan_sqrt_minus_one(n):
            mismatches.append(n)
        elif roots and n % 4 and len(roots) != 2 ** len(factorize(n).odd_primes):
            wrong_counts.append(n)
    detail: Dict[str, Any] = {}
    if mismatches:
        detail['mismatches'] = mismatches
    if wrong_counts:
        detail['wrong counts'] = wrong_counts
    return [CheckRecord('solutions', f'n={n_min}..{n_max}', 'sqrt_minus_one', not detail, detail)]


def uniqueness_records(bound: int) -> List[CheckRecord]:
    result = verify_uniqueness(bound)
    detail: Dict[str, Any] = {'dominants': len(result.dominants)}
    if result.non_singletons:
        detail['non_singletons'] = result.non_singletons
    return [CheckRecord('uniqueness', f'bound={bound}', 'uniqueness', result.passed, detail)]


class VerificationService(Observable):
    """Сервис верификации"""

    def __init__(self, config: Optional[AppConfig] = None):
        super().__init__()
        self.config = config or get_config()
        self.jobs = self.config.get_int('verification.jobs')
        if self.jobs < 1:
            raise BadInput(f"jobs must be >= 1, got {self.jobs}")

    def default_bound(self, suite: str) -> int:
        return self.config.get_int(BOUND_KEYS[suite])

    def _identity_params(self, identity_id: str) -> Dict[str, Any]:
        if identity_id in ('9.2', '9.gram'):
            return {'window': self.config.get_int('orbit.uv_window')}
        if identity_id == '10.7':
            return {'n_max': self.config.get_int('orbit.diagonal_n_max')}
        return {}

    def _identity_tasks(self, cmd: str, ids: Sequence[str], bound: int) -> List[Task]:
        tasks = []
        for identity_id in ids:
            params = self._identity_params(identity_id)
            for subject in subjects_for(identity_id, bound):
                tasks.append(Task(cmd, str(subject), identity_id, identity_records,
                                  (cmd, identity_id, subject), params))
        return tasks

    def _solution_tasks(self, cmd: str, bound: int) -> List[Task]:
        q_cap = self.config.get_int('solutions.q_cap')
        if bound > q_cap:
            logger.warning(f"solutions: q capped at {q_cap} (bound {bound})")
        tasks = [Task(cmd, f'q={q}', 'count', solution_records, (q,))
                 for q in range(3, min(bound, q_cap) + 1, 3)]
        n_max = self.config.get_int('solutions.residue_n_max')
        for n_min in range(1, n_max + 1, RESIDUE_CHUNK):
            n_hi = min(n_max, n_min + RESIDUE_CHUNK - 1)
            tasks.append(Task(cmd, f'n={n_min}..{n_hi}', 'sqrt_minus_one', residue_records, (n_hi, n_min)))
        return tasks

    def build_tasks(self, suite: str, bound: int, ids: Optional[Sequence[str]] = None) -> List[Task]:
        """Tasks in canonical order"""
        if suite == 'enumerate':
            oracle_bound = self.config.get_int('verification.oracle_bound')
            return [Task(suite, f'bound={bound}', 'enumerate', enumerate_records, (bound, oracle_bound))]
        if suite == 'verify-identities':
            selected = list(ids) if ids else identity_ids()
            for identity_id in selected:
                get_entry(identity_id)
            return self._identity_tasks(suite, selected, bound)
        if suite == 'solutions':
            return self._solution_tasks(suite, bound)
        if suite == 'uniqueness':
            pair_bound = min(bound, self.default_bound('verify-identities'))
            tasks = [Task(suite, f'bound={bound}', 'uniqueness', uniqueness_records, (bound,))]
            return tasks + self._identity_tasks(suite, SUITE_IDENTITIES[suite], pair_bound)
        if suite in SUITE_IDENTITIES:
            return self._identity_tasks(suite, SUITE_IDENTITIES[suite], bound)
        raise BadInput(f"unknown suite: {suite}")

    def _execute_all(self, tasks: List[Task]) -> Iterator[CheckRecord]:
        # pool.map keeps submission order, so output does not depend on --jobs
        if self.jobs > 1 and len(tasks) > 1:
            chunksize = max(1, len(tasks) // (4 * self.jobs))
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                for batch in pool.map(execute, tasks, chunksize=chunksize):
                    yield from batch
        else:
            for task in tasks:
                yield from execute(task)

    def run(self, suite: str, bound: Optional[int] = None, ids: Optional[Sequence[str]] = None) -> Report:
        """Runs one suite; 'all' runs every suite at the same bound"""
        if suite == 'all':
            return self.run_all(bound)
        if suite not in SUITES:
            raise BadInput(f"unknown suite: {suite}")
        if bound is None:
            bound = self.default_bound(suite)
        if bound < 1:
            raise BadInput(f"bound must be >= 1, got {bound}")

        params: Dict[str, Any] = {'bound': bound}
        if ids:
            params['ids'] = list(ids)
        report = Report(command=suite, params=params)
        start = time.perf_counter()
        logger.info(f"Suite {suite} started (bound={bound}, jobs={self.jobs})")
        self.notify_observers(SUITE_STARTED, suite, params)

        for record in self._execute_all(self.build_tasks(suite, bound, ids)):
            report.add(record)
            self.notify_observers(CHECK_COMPLETED, record)

        report.wall_time = time.perf_counter() - start
        logger.info(f"Suite {suite} finished: {len(report.records)} records, "
                    f"{len(report.failures())} failures, {report.wall_time:.2f}s")
        self.notify_observers(SUITE_FINISHED, report)
        return report

    def run_all(self, bound: Optional[int] = None) -> Report:
        combined = Report(command='all', params={'bound': bound} if bound is not None else {})
        start = time.perf_counter()
        for suite in SUITES:
            combined.extend(self.run(suite, bound).records)
        combined.wall_time = time.perf_counter() - start
        return combined
