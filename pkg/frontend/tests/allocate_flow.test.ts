import { describe, expect, it, vi } from 'vitest';

import { Allocation } from '../src/api.js';
import { emptySnapshot } from '../src/store.js';
import { RatingPreview, renderSupervisorPanel } from '../src/views.js';
import { makeActions, posting, supervisorSession } from './fixtures.js';

// ada has history, the other two fall back to the provisional 9
const preview: RatingPreview = (studentId) =>
  studentId === 'ada' ? { rating: 7.5, isNew: false } : { rating: 9, isNew: true };

function panel(
  p = posting({ applicant_ids: ['ada', 'bo', 'cy'] }),
  lastAllocation: Allocation | null = null,
  actions = makeActions(),
) {
  const snapshot = emptySnapshot();
  snapshot.positions = [p];
  const view = renderSupervisorPanel(
    snapshot, supervisorSession, actions, preview, lastAllocation,
  );
  return { view, card: view.querySelector('[data-card="posting-admin"]')! };
}

describe('supervisor allocation flow', () => {
  it('lists each applicant with an effective rating, flagging the unrated', () => {
    const { card } = panel();
    const rows = card.querySelectorAll('[data-row="applicant"]');
    expect(rows).toHaveLength(3);
    expect(rows[0]!.textContent).toContain('ada');
    expect(rows[0]!.textContent).toContain('rating 7.5');
    expect(rows[0]!.querySelector('[data-flag="new"]')).toBeNull();
    for (const row of [rows[1]!, rows[2]!]) {
      expect(row.textContent).toContain('rating 9');
      expect(row.querySelector('[data-flag="new"]')).not.toBeNull();
    }
  });

  it('runs the draw from the allocate control', async () => {
    const actions = makeActions();
    const { card } = panel(posting({ applicant_ids: ['ada', 'bo', 'cy'] }), null, actions);
    (card.querySelector('[data-control="allocate"]') as HTMLButtonElement).click();
    await vi.waitFor(() =>
      expect(actions.allocate).toHaveBeenCalledWith('pos-001'),
    );
  });

  it('highlights the winner and shows the audit after the draw', () => {
    const allocation: Allocation = {
      position_id: 'pos-001',
      winner: 'bo',
      cold_start: false,
      seed: 42,
      applicants: ['ada', 'bo', 'cy'],
      probabilities: { ada: '7/15', bo: '1/3', cy: '1/5' },
    };
    const { card } = panel(
      posting({ applicant_ids: ['ada', 'bo', 'cy'], status: 'ASSIGNED' }),
      allocation,
    );
    const winner = card.querySelector('[data-winner]')!;
    expect(winner.textContent).toContain('bo');
    const audit = card.querySelector('[data-audit]')!;
    expect(audit.textContent).toContain('Winner: bo');
    expect(audit.textContent).toContain('seed 42');
    expect(audit.textContent).toContain('7/15');
    expect(audit.textContent).toContain('rating-weighted');
    // the posting badge flipped with the status
    expect(card.querySelector('[data-badge="status"]')!.textContent).toBe('ASSIGNED');
  });

  it('hides the allocate control once the posting is assigned', () => {
    const { card } = panel(
      posting({ applicant_ids: ['ada', 'bo', 'cy'], status: 'ASSIGNED' }),
    );
    expect(card.querySelector('[data-control="allocate"]')).toBeNull();
  });

  it('renders no applicants as guidance, not as a failure', () => {
    const { card } = panel(posting({ applicant_ids: [] }));
    const note = card.querySelector('[data-note="no-applicants"]')!;
    expect(note.textContent).toContain('share the posting');
    expect(card.querySelector('[data-control="allocate"]')).toBeNull();
    expect(card.querySelector('[data-error]')!.textContent).toBe('');
  });

  it('marks a cold-start audit as uniform', () => {
    const allocation: Allocation = {
      position_id: 'pos-001',
      winner: 'cy',
      cold_start: true,
      seed: 7,
      applicants: ['ada', 'bo', 'cy'],
      probabilities: { ada: '1/3', bo: '1/3', cy: '1/3' },
    };
    const { card } = panel(
      posting({ applicant_ids: ['ada', 'bo', 'cy'], status: 'ASSIGNED' }),
      allocation,
    );
    expect(card.querySelector('[data-audit]')!.textContent).toContain('cold start (uniform)');
  });
});
