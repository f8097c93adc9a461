"""Research scoring against an independent brute-force oracle.

The oracle below recomputes every score with Fraction arithmetic and its
own sort-and-rank loop, sharing no code with the module under test. Spot
values (1.5, 0.8223, 2.3223) were computed by hand with long division.
"""
import random
from decimal import Decimal
from fractions import Fraction

import pytest

from campuschain import research
from campuschain.errors import DomainError


def q4(fraction):
    """Round a Fraction to 4 places, half up — the oracle's own rounding."""
    scaled = fraction * 10_000
    floor = scaled.numerator // scaled.denominator
    remainder = scaled - floor
    if remainder * 2 >= 1:
        floor += 1
    return Decimal(floor) / 10_000


def test_grade_score_is_mean_of_components():
    grade = research.Grade(novelty=8, effort=9, relevance=7)
    assert grade.score() == Decimal("8.0000")
    uneven = research.Grade(novelty=7, effort=8, relevance=7)
    # 22/3 = 7.3333...
    assert uneven.score() == Decimal("7.3333")


def test_grade_component_bounds():
    with pytest.raises(DomainError) as err:
        research.Grade(novelty=11, effort=5, relevance=5)
    assert err.value.code == "COMPONENT_OUT_OF_RANGE"
    with pytest.raises(DomainError):
        research.Grade(novelty=-1, effort=5, relevance=5)
    with pytest.raises(DomainError):
        research.Grade(novelty=True, effort=5, relevance=5)


def test_research_rating_spot_values():
    pub = research.Publication(
        journal_name="J", impact_factor=Decimal("3.0"), n_authors=2, verified=True
    )
    assert research.research_rating(pub) == Decimal("1.5000")
    pub = research.Publication(
        journal_name="J", impact_factor=Decimal("2.467"), n_authors=3, verified=True
    )
    # 2.467/3 = 0.82233..., half-up at 4 places
    assert research.research_rating(pub) == Decimal("0.8223")


def test_impact_score_sums_and_handles_empty():
    pubs = (
        research.Publication("A", Decimal("3.0"), 2, verified=True),
        research.Publication("B", Decimal("2.467"), 3, verified=True),
    )
    assert research.student_impact_score(pubs) == Decimal("2.3223")
    assert research.student_impact_score(()) == Decimal("0.0000")


def test_unverified_publication_refused():
    pub = research.Publication("J", Decimal("5"), 1, verified=False)
    with pytest.raises(DomainError) as err:
        research.research_rating(pub)
    assert err.value.code == "UNVERIFIED_PUBLICATION"


def test_zero_authors_refused():
    with pytest.raises(DomainError) as err:
        research.Publication("J", Decimal("5"), 0)
    assert err.value.code == "ZERO_AUTHORS"


def test_mentor_rating_requires_graded_work():
    with pytest.raises(DomainError) as err:
        research.mentor_rating([])
    assert err.value.code == "NO_GRADED_REPORTS"
    scores = [Decimal("8.0000"), Decimal("7.3333")]
    assert research.mentor_rating(scores) == Decimal("7.6667")  # 15.3333/2 = 7.66665 → half up


def test_rating_monotonicity():
    low = research.Publication("J", Decimal("2"), 4, verified=True)
    high = research.Publication("J", Decimal("3"), 4, verified=True)
    crowded = research.Publication("J", Decimal("3"), 5, verified=True)
    assert research.research_rating(high) > research.research_rating(low)
    assert research.research_rating(crowded) < research.research_rating(high)


def test_competition_ranking():
    profiles = [
        research.StudentResearchProfile("s1", (Decimal(9),), ()),
        research.StudentResearchProfile("s2", (Decimal(7),), ()),
        research.StudentResearchProfile("s3", (Decimal(7),), ()),
        research.StudentResearchProfile("s4", (Decimal(5),), ()),
    ]
    mentor, published = research.build_ranklists(profiles)
    assert published.entries == ()
    assert [(e.student_id, e.rank) for e in mentor.entries] == [
        ("s1", 1), ("s2", 2), ("s3", 2), ("s4", 4)
    ]


def test_published_students_leave_mentor_list():
    pub = research.Publication("J", Decimal("4"), 2, verified=True)
    profiles = [
        research.StudentResearchProfile("pub", (Decimal(9),), (pub,)),
        research.StudentResearchProfile("plain", (Decimal(8),), ()),
    ]
    mentor, published = research.build_ranklists(profiles)
    assert [e.student_id for e in published.entries] == ["pub"]
    assert [e.student_id for e in mentor.entries] == ["plain"]


def test_unverified_publication_does_not_move_student():
    pub = research.Publication("J", Decimal("4"), 2, verified=False)
    profiles = [research.StudentResearchProfile("s", (Decimal(8),), (pub,))]
    mentor, published = research.build_ranklists(profiles)
    assert [e.student_id for e in mentor.entries] == ["s"]
    assert published.entries == ()


def _oracle_ranklists(rows):
    """rows: (student_id, [report scores as Fractions], [(factor, authors, verified)])"""
    published, mentor = [], []
    for sid, scores, pubs in rows:
        verified = [(f, a) for f, a, ok in pubs if ok]
        if verified:
            total = Fraction(0)
            for factor, authors in verified:
                total += Fraction(q4(Fraction(factor) / authors))
            published.append((sid, q4(total)))
        else:
            if scores:
                graded = [q4(s) for s in scores]
                mean = Fraction(sum(Fraction(g) for g in graded), len(graded))
                mentor.append((sid, q4(mean)))
            else:
                mentor.append((sid, Decimal("0.0000")))

    def rank(entries):
        entries.sort(key=lambda e: (-e[1], e[0]))
        out = []
        for pos, (sid, score) in enumerate(entries, start=1):
            if out and out[-1][1] == score:
                out.append((sid, score, out[-1][2]))
            else:
                out.append((sid, score, pos))
        return [(sid, score, rk) for sid, score, rk in out]

    return rank(mentor), rank(published)


def test_ranklists_match_brute_force_oracle():
    rng = random.Random(1905)
    for trial in range(10):
        rows = []
        profiles = []
        for i in range(50):
            sid = f"s{i:02d}"
            n_reports = rng.randint(0, 4)
            comps = [
                (rng.randint(0, 10), rng.randint(0, 10), rng.randint(0, 10))
                for _ in range(n_reports)
            ]
            pubs = [
                (
                    Decimal(rng.randint(1, 80)) / 10,
                    rng.randint(1, 5),
                    rng.random() < 0.5,
                )
                for _ in range(rng.randint(0, 3))
            ]
            rows.append(
                (
                    sid,
                    [Fraction(a + b + c, 3) for a, b, c in comps],
                    [(f, a, ok) for f, a, ok in pubs],
                )
            )
            # project_ratings: mentor mean per project; model one project
            # holding all reports, matching the service's grouping
            report_scores = [
                research.Grade(a, b, c).score() for a, b, c in comps
            ]
            ratings = (
                (research.mentor_rating(report_scores),) if report_scores else ()
            )
            profiles.append(
                research.StudentResearchProfile(
                    sid,
                    ratings,
                    tuple(
                        research.Publication("J", f, a, verified=ok)
                        for f, a, ok in pubs
                    ),
                )
            )
        mentor, published = research.build_ranklists(profiles)
        oracle_mentor, oracle_published = _oracle_ranklists(rows)
        got_mentor = [(e.student_id, e.score, e.rank) for e in mentor.entries]
        got_published = [(e.student_id, e.score, e.rank) for e in published.entries]
        assert got_mentor == oracle_mentor, f"trial {trial} mentor list diverged"
        assert got_published == oracle_published, f"trial {trial} published diverged"
        # partition: each student in exactly one list
        seen = {e.student_id for e in mentor.entries} | {
            e.student_id for e in published.entries
        }
        assert len(seen) == 50
        assert len(mentor.entries) + len(published.entries) == 50


def test_award_schedule_and_ties():
    entries = (
        research.RanklistEntry("a", Decimal(9), 1),
        research.RanklistEntry("b", Decimal(7), 2),
        research.RanklistEntry("c", Decimal(7), 2),
        research.RanklistEntry("d", Decimal(1), 4),
    )
    schedule = research.DEFAULT_AWARD_SCHEDULE
    amounts = [research.amount_for_rank(schedule, e.rank) for e in entries]
    assert amounts == [100, 60, 60, 10]


def test_award_for_ranklist_mints_and_budget():
    from campuschain import wallet

    validator = wallet.generate_keypair(seed=90)
    ranklist = research.Ranklist(
        kind=research.MENTOR_RATED,
        entries=(
            research.RanklistEntry("a", Decimal(9), 1),
            research.RanklistEntry("b", Decimal(8), 2),
        ),
    )
    wallets = {"a": "vj1" + "a" * 40, "b": "vj1" + "b" * 40}
    txs = research.award_for_ranklist(
        ranklist, research.DEFAULT_AWARD_SCHEDULE, "2026-T1",
        wallets, validator, start_nonce=0, timestamp=1,
    )
    assert [t.amount for t in txs] == [100, 60]
    assert txs[0].memo == "reward:research:MENTOR_RATED:2026-T1"
    assert [t.nonce for t in txs] == [0, 1]

    with pytest.raises(DomainError) as err:
        research.award_for_ranklist(
            ranklist, research.DEFAULT_AWARD_SCHEDULE, "2026-T1",
            wallets, validator, start_nonce=0, timestamp=1, budget=150,
        )
    assert err.value.code == "BUDGET_EXCEEDED"

    with pytest.raises(DomainError) as err:
        research.award_for_ranklist(
            ranklist, research.DEFAULT_AWARD_SCHEDULE, "2026-T1",
            {"a": wallets["a"]}, validator, start_nonce=0, timestamp=1,
        )
    assert err.value.code == "MISSING_WALLET"
