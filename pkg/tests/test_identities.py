import pytest

from core import identities
from core.exceptions import BadInput, UnknownIdentity
from core.identities import (CATALOG, dominated_subjects, get_entry, identity_ids, markoff_numbers,
                             orientation_pairs, subjects_for, verify_all, verify_identity)
from core.models import Orientation

BOUND = 13

CASES = [(identity_id, subject)
         for identity_id in identity_ids()
         for subject in subjects_for(identity_id, BOUND)]


def test_catalog_order_is_stable():
    ids = identity_ids()
    assert ids[0] == '1.2'
    assert ids == list(CATALOG)
    assert len(set(ids)) == len(ids)


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_entry('no-such-identity')
    with pytest.raises(UnknownIdentity):
        verify_identity('no-such-identity', Orientation(3, 3, 3))


def test_bound_must_be_positive():
    with pytest.raises(BadInput):
        subjects_for('2.1', 0)


def test_every_identity_has_subjects():
    for identity_id in identity_ids():
        assert subjects_for(identity_id, BOUND), identity_id


def test_subject_lists():
    assert markoff_numbers(13) == [1, 2, 5, 13]
    assert [s[0] for s in dominated_subjects(13)] == [1, 2, 5, 13]
    # корень и его зеркало совпадают
    assert len(orientation_pairs(1)) == 1


@pytest.mark.parametrize("identity_id, subject", CASES, ids=[f"{i}-{s}" for i, s in CASES])
def test_identity_holds(identity_id, subject):
    report = verify_identity(identity_id, subject)
    assert report.checks, "an identity with no checks never passes"
    assert report.passed, report.failed_checks()


@pytest.mark.parametrize("identity_id", identity_ids())
def test_corrupted_identity_fails(identity_id):
    subject = subjects_for(identity_id, BOUND)[-1]
    report = verify_identity(identity_id, subject, corrupt=(0, 0))
    assert not report.passed


def test_verify_all_keeps_requested_order():
    reports = verify_all(5, ids=['2.1', '1.2'])
    assert [r.identity_id for r in reports][0] == '2.1'
    assert all(r.passed for r in reports)
    with pytest.raises(UnknownIdentity):
        verify_all(5, ids=['2.1', 'bogus'])


def test_script_A_denominator_bound_is_checked(monkeypatch):
    original = identities.script_A
    monkeypatch.setattr(identities, "script_A", lambda m, alpha, l: original(m, alpha, l) * 5)
    report = verify_identity('4.23', Orientation(3, 3, 3))
    assert "A^-1 Z denominator divides 3 or 6" in report.failed_checks()
