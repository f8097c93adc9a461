import { describe, expect, it, vi } from 'vitest';

import { ApiError } from '../src/api.js';
import { emptySnapshot } from '../src/store.js';
import { renderCampaignsPanel } from '../src/views.js';
import { campaign, makeActions, studentSession } from './fixtures.js';

function panelWith(c = campaign(), actions = makeActions()) {
  const snapshot = emptySnapshot();
  snapshot.campaigns = [c];
  const view = renderCampaignsPanel(snapshot, studentSession, actions);
  return { view, card: view.querySelector('[data-card="campaign"]')! };
}

describe('donate flow', () => {
  it('shows progress and the remaining amount while open', () => {
    const { card } = panelWith();
    expect(card.querySelector('[data-progress]')!.textContent).toBe(
      '70/100 raised, 30 to go',
    );
    const donate = card.querySelector('[data-control="donate"]') as HTMLButtonElement;
    expect(donate.disabled).toBe(false);
  });

  it('asks for confirmation with the exact amount, then donates', async () => {
    const actions = makeActions();
    const { card } = panelWith(campaign(), actions);
    (card.querySelector('[data-field="amount"]') as HTMLInputElement).value = '30';
    (card.querySelector('[data-control="donate"]') as HTMLButtonElement).click();

    expect(actions.donate).not.toHaveBeenCalled();
    const confirm = card.querySelector('[data-confirm]')!;
    expect(confirm.textContent).toContain('Send 30 coins to "New chairs for the studio"?');

    (confirm.querySelector('[data-confirm-go]') as HTMLButtonElement).click();
    await vi.waitFor(() => expect(actions.donate).toHaveBeenCalledOnce());
    expect(vi.mocked(actions.donate).mock.calls[0]![1]).toBe(30);
    await vi.waitFor(() =>
      expect(card.querySelector('[data-banner="success"]')!.textContent).toContain(
        'Donated 30 coins',
      ),
    );
  });

  it('cancelling the confirmation sends nothing', () => {
    const actions = makeActions();
    const { card } = panelWith(campaign(), actions);
    (card.querySelector('[data-field="amount"]') as HTMLInputElement).value = '10';
    (card.querySelector('[data-control="donate"]') as HTMLButtonElement).click();
    const confirm = card.querySelector('[data-confirm]')!;
    (confirm.querySelector('[data-confirm-cancel]') as HTMLButtonElement).click();
    expect(card.querySelector('[data-confirm]')).toBeNull();
    expect(actions.donate).not.toHaveBeenCalled();
  });

  it('blocks zero and non-integer amounts before any request', () => {
    for (const bad of ['0', '-5', '2.5', '']) {
      const actions = makeActions();
      const { card } = panelWith(campaign(), actions);
      (card.querySelector('[data-field="amount"]') as HTMLInputElement).value = bad;
      (card.querySelector('[data-control="donate"]') as HTMLButtonElement).click();
      expect(card.querySelector('[data-confirm]')).toBeNull();
      expect(actions.donate).not.toHaveBeenCalled();
      expect(card.querySelector('[data-error]')!.textContent).toContain('at least 1');
    }
  });

  it('renders an overshoot refusal inline, with the remaining amount', async () => {
    const actions = makeActions();
    actions.donate = vi.fn(async () => {
      throw new ApiError('OVERSHOOT', 'donation 31 exceeds remaining 30');
    });
    const { card } = panelWith(campaign(), actions);
    (card.querySelector('[data-field="amount"]') as HTMLInputElement).value = '31';
    (card.querySelector('[data-control="donate"]') as HTMLButtonElement).click();
    (card.querySelector('[data-confirm-go]') as HTMLButtonElement).click();
    await vi.waitFor(() => {
      const error = card.querySelector('[data-error]')!.textContent!;
      expect(error).toContain('OVERSHOOT');
      expect(error).toContain('remaining 30');
    });
  });

  it('renders a closed-campaign refusal inline', async () => {
    const actions = makeActions();
    actions.donate = vi.fn(async () => {
      throw new ApiError('CAMPAIGN_CLOSED', 'campaign cmp-001 is closed');
    });
    const { card } = panelWith(campaign(), actions);
    (card.querySelector('[data-field="amount"]') as HTMLInputElement).value = '5';
    (card.querySelector('[data-control="donate"]') as HTMLButtonElement).click();
    (card.querySelector('[data-confirm-go]') as HTMLButtonElement).click();
    await vi.waitFor(() =>
      expect(card.querySelector('[data-error]')!.textContent).toContain('CAMPAIGN_CLOSED'),
    );
  });

  it('disables the donate control once the campaign is closed', () => {
    const { card } = panelWith(campaign({ raised: 100, status: 'CLOSED' }));
    const donate = card.querySelector('[data-control="donate"]') as HTMLButtonElement;
    const amount = card.querySelector('[data-field="amount"]') as HTMLInputElement;
    expect(donate.disabled).toBe(true);
    expect(amount.disabled).toBe(true);
    expect(donate.textContent).toBe('Goal reached');
    expect(card.querySelector('[data-progress]')!.textContent).toBe('100/100 raised');
  });
});
