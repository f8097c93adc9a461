// Shared fixtures: a filled-in snapshot and inert action spies. Tests that
// want a failure path override the relevant spy.

import { vi } from 'vitest';

import { Assignment, Campaign, Posting, Session } from '../src/api.js';
import { Snapshot, emptySnapshot } from '../src/store.js';
import { Actions } from '../src/views.js';

export const studentSession: Session = {
  subject_id: 'stu-7',
  role: 'STUDENT',
  wallet_address: 'vj1' + '7a'.repeat(20),
};

export const supervisorSession: Session = {
  subject_id: 'sup-1',
  role: 'SUPERVISOR',
  wallet_address: 'vj1' + '5b'.repeat(20),
};

export const facultySession: Session = {
  subject_id: 'fac-2',
  role: 'FACULTY',
  wallet_address: 'vj1' + '3c'.repeat(20),
};

export function makeActions(): Actions {
  return {
    donate: vi.fn(async () => {}),
    createCampaign: vi.fn(async () => {}),
    applyToPosition: vi.fn(async () => {}),
    submitTimesheet: vi.fn(async () => {}),
    allocate: vi.fn(async () => {}),
    rate: vi.fn(async () => {}),
    createPosition: vi.fn(async () => {}),
    createProject: vi.fn(async () => {}),
    submitReport: vi.fn(async () => {}),
    grade: vi.fn(async () => {}),
    addPublication: vi.fn(async () => {}),
    verifyPublication: vi.fn(async () => {}),
  };
}

export function posting(overrides: Partial<Posting> = {}): Posting {
  return {
    position_id: 'pos-001',
    supervisor_id: 'sup-1',
    position_type: 'canteen',
    hourly_rate: 5,
    weekly_hour_cap: '10',
    status: 'OPEN',
    applicant_ids: [],
    description: '',
    created_at: 100,
    ...overrides,
  };
}

export function campaign(overrides: Partial<Campaign> = {}): Campaign {
  return {
    campaign_id: 'cmp-001',
    beneficiary: 'vj1' + 'be'.repeat(20),
    title: 'New chairs for the studio',
    description: '',
    goal: 100,
    raised: 70,
    status: 'OPEN',
    created_at: 100,
    ...overrides,
  };
}

export function assignment(overrides: Partial<Assignment> = {}): Assignment {
  return {
    assignment_id: 'asg-001',
    position_id: 'pos-001',
    student_id: 'stu-7',
    supervisor_id: 'sup-1',
    position_type: 'canteen',
    hourly_rate: 5,
    weekly_hour_cap: '10',
    started_at: 200,
    status: 'ACTIVE',
    ...overrides,
  };
}

export function studentSnapshot(): Snapshot {
  const snapshot = emptySnapshot();
  snapshot.projects = [
    {
      project_id: 'prj-1',
      topic: 'solar benches',
      status: 'APPROVED',
      student_ids: ['stu-7', 'stu-8'],
    },
    {
      project_id: 'prj-2',
      topic: 'noise maps',
      status: 'APPROVED',
      student_ids: ['stu-7'],
    },
  ];
  snapshot.assignments = [assignment()];
  snapshot.ranklists = {
    MENTOR_RATED: { kind: 'MENTOR_RATED', entries: [] },
    PUBLISHED: {
      kind: 'PUBLISHED',
      entries: [
        { student_id: 'stu-2', score: '2.1000', rank: 1 },
        { student_id: 'stu-5', score: '1.4000', rank: 2 },
        { student_id: 'stu-7', score: '0.8223', rank: 3 },
      ],
    },
  };
  snapshot.notices = ['Wage of 37 paid for week 2026-03-02.'];
  return snapshot;
}
