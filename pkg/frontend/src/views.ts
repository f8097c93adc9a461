// Render functions for every role's panels. Views are pure: they take a
// data snapshot plus an actions object and return a detached element, so
// tests can render them against fixtures with no app shell and no network.
// Every role-gated control carries data-control and data-requires-role
// attributes; the role matrix tests key off those.

import { Allocation, ApiError, Assignment, Campaign, Posting, Session } from './api.js';
import { clear, el, fmtCoins } from './dom.js';
import { Snapshot } from './store.js';

export interface Actions {
  donate(campaign: Campaign, amount: number): Promise<void>;
  createCampaign(title: string, goal: number, description: string): Promise<void>;
  applyToPosition(positionId: string): Promise<void>;
  submitTimesheet(assignment: Assignment, weekStart: string, hours: string): Promise<void>;
  allocate(positionId: string): Promise<void>;
  rate(assignmentId: string, rating: number): Promise<void>;
  createPosition(type: string, rate: number, cap: string, description: string): Promise<void>;
  createProject(topic: string, studentIds: string[]): Promise<void>;
  submitReport(projectId: string, contentRef: string): Promise<void>;
  grade(reportId: string, novelty: number, effort: number, relevance: number): Promise<void>;
  addPublication(projectId: string, journal: string, impactFactor: string, nAuthors: number): Promise<void>;
  verifyPublication(publicationId: string): Promise<void>;
}

export interface RatingPreview {
  (studentId: string, positionType: string): { rating: number; isNew: boolean };
}

const errorText = (err: unknown): string =>
  err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);

function section(title: string, ...children: (HTMLElement | null)[]): HTMLElement {
  return el('section', { class: 'panel' }, el('h2', {}, title), ...children);
}

function emptyState(text: string): HTMLElement {
  return el('p', { class: 'empty', 'data-empty': '' }, text);
}

function statusBadge(status: string): HTMLElement {
  return el('span', { class: `badge badge-${status.toLowerCase()}`, 'data-badge': 'status' }, status);
}

// Two-phase action: first click arms a confirm strip showing the exact
// amount, second click runs it. Nothing coin-moving happens on one click.
function confirmStrip(
  label: string,
  run: () => Promise<void>,
  onError: (err: unknown) => void,
): HTMLElement {
  const strip = el('div', { class: 'confirm', 'data-confirm': '' });
  strip.append(
    el('span', {}, label),
    el(
      'button',
      {
        'data-confirm-go': '',
        onclick: () => {
          strip.remove();
          run().catch(onError);
        },
      },
      'Confirm',
    ),
    el('button', { 'data-confirm-cancel': '', onclick: () => strip.remove() }, 'Cancel'),
  );
  return strip;
}

// -- student ----------------------------------------------------------------

export function renderStudentDashboard(
  snapshot: Snapshot,
  session: Session,
  actions: Actions,
): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'student' });

  const nav = el(
    'nav',
    { class: 'quick-nav' },
    el('a', { href: '#/positions', 'data-nav': 'apply' }, 'Apply to positions'),
    el('a', { href: '#/projects', 'data-nav': 'report' }, 'Submit a report'),
    el('a', { href: '#/campaigns', 'data-nav': 'donate' }, 'Donate'),
  );
  root.append(nav);

  if (snapshot.balance) {
    root.append(
      el(
        'p',
        { class: 'balance-line' },
        `Wallet ${snapshot.balance.address}: ${fmtCoins(snapshot.balance.balance)}`,
      ),
    );
  }

  const ranks = el('div', { class: 'ranks' });
  const lists = snapshot.ranklists;
  let ranked = false;
  if (lists) {
    for (const list of [lists.PUBLISHED, lists.MENTOR_RATED]) {
      const entry = list.entries.find((e) => e.student_id === session.subject_id);
      if (entry) {
        ranked = true;
        ranks.append(
          el(
            'span',
            { class: 'badge badge-rank', 'data-badge': 'rank' },
            `rank ${entry.rank}`,
          ),
          el('span', { class: 'rank-detail' }, ` ${list.kind}, score ${entry.score}`),
        );
      }
    }
  }
  root.append(
    section('Standing', ranked ? ranks : emptyState('Not on a ranklist yet.')),
  );

  const projects = el('div', { class: 'cards' });
  for (const project of snapshot.projects) {
    projects.append(
      el(
        'article',
        { class: 'card', 'data-card': 'project' },
        el('h3', {}, project.topic),
        statusBadge(project.status),
        el('p', {}, `with ${project.student_ids.join(', ') || 'you'}`),
      ),
    );
  }
  root.append(
    section(
      'Ongoing projects',
      snapshot.projects.length ? projects : emptyState('No ongoing projects.'),
    ),
  );

  const jobs = el('div', { class: 'cards' });
  for (const job of snapshot.assignments) {
    jobs.append(jobCard(job, actions));
  }
  root.append(
    section('Current jobs', snapshot.assignments.length ? jobs : emptyState('No current jobs.')),
  );

  const notices = el('ul', { class: 'notices' });
  for (const notice of snapshot.notices) notices.append(el('li', {}, notice));
  root.append(
    section(
      'Notifications',
      snapshot.notices.length ? notices : emptyState('Nothing new.'),
    ),
  );

  return root;
}

function jobCard(job: Assignment, actions: Actions): HTMLElement {
  const card = el(
    'article',
    { class: 'card', 'data-card': 'job' },
    el('h3', {}, job.position_type),
    statusBadge(job.status),
    el('p', {}, `${fmtCoins(job.hourly_rate)}/hour, cap ${job.weekly_hour_cap}h/week`),
  );
  if (job.status !== 'ACTIVE') return card;

  const week = el('input', { type: 'date', 'data-field': 'week' }) as HTMLInputElement;
  const hours = el('input', {
    type: 'text',
    placeholder: 'hours, e.g. 7.5',
    'data-field': 'hours',
  }) as HTMLInputElement;
  const feedback = el('p', { class: 'error', 'data-error': '' });
  const submit = el(
    'button',
    {
      'data-control': 'timesheet',
      'data-requires-role': 'STUDENT',
      onclick: () => {
        feedback.textContent = '';
        const hoursValue = Number(hours.value);
        if (!week.value || !Number.isFinite(hoursValue) || hoursValue <= 0) {
          feedback.textContent = 'Enter a week start date and a positive hour count.';
          return;
        }
        const wage = Math.floor(job.hourly_rate * hoursValue);
        card.append(
          confirmStrip(
            `Claim ${fmtCoins(wage)} for ${hours.value}h of ${job.position_type}?`,
            () => actions.submitTimesheet(job, week.value, hours.value),
            (err) => {
              feedback.textContent = errorText(err);
            },
          ),
        );
      },
    },
    'Submit timesheet',
  );
  card.append(el('div', { class: 'row' }, week, hours, submit), feedback);
  return card;
}

// -- positions --------------------------------------------------------------

export function renderPositionsPanel(
  snapshot: Snapshot,
  session: Session,
  actions: Actions,
): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'positions' });
  const list = el('div', { class: 'cards' });
  for (const posting of snapshot.positions) {
    const card = el(
      'article',
      { class: 'card', 'data-card': 'posting' },
      el('h3', {}, posting.position_type),
      statusBadge(posting.status),
      el(
        'p',
        {},
        `${fmtCoins(posting.hourly_rate)}/hour, cap ${posting.weekly_hour_cap}h/week,` +
          ` ${posting.applicant_ids.length} applicant(s)`,
      ),
      posting.description ? el('p', { class: 'muted' }, posting.description) : null,
    );
    const feedback = el('p', { class: 'error', 'data-error': '' });
    if (session.role === 'STUDENT' && posting.status === 'OPEN') {
      const applied = posting.applicant_ids.includes(session.subject_id);
      card.append(
        el(
          'button',
          {
            'data-control': 'apply',
            'data-requires-role': 'STUDENT',
            disabled: applied,
            onclick: (event) => {
              const button = event.currentTarget as HTMLButtonElement;
              button.disabled = true;
              actions.applyToPosition(posting.position_id).catch((err) => {
                button.disabled = false;
                feedback.textContent = errorText(err);
              });
            },
          },
          applied ? 'Applied' : 'Apply',
        ),
        feedback,
      );
    }
    list.append(card);
  }
  root.append(
    section(
      'Open positions',
      snapshot.positions.length ? list : emptyState('No positions posted.'),
    ),
  );
  return root;
}

// -- campaigns ----------------------------------------------------------------

export function renderCampaignsPanel(
  snapshot: Snapshot,
  session: Session,
  actions: Actions,
): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'campaigns' });

  const list = el('div', { class: 'cards' });
  for (const campaign of snapshot.campaigns) {
    list.append(campaignCard(campaign, actions));
  }
  root.append(
    section(
      'Campaigns',
      snapshot.campaigns.length ? list : emptyState('No campaigns yet.'),
    ),
  );

  root.append(newCampaignForm(actions));
  return root;
}

function campaignCard(campaign: Campaign, actions: Actions): HTMLElement {
  const closed = campaign.status === 'CLOSED';
  const remaining = campaign.goal - campaign.raised;
  const card = el(
    'article',
    { class: 'card', 'data-card': 'campaign' },
    el('h3', {}, campaign.title),
    statusBadge(campaign.status),
    el(
      'p',
      { 'data-progress': '' },
      `${campaign.raised}/${campaign.goal} raised` + (closed ? '' : `, ${remaining} to go`),
    ),
    campaign.description ? el('p', { class: 'muted' }, campaign.description) : null,
  );

  const amount = el('input', {
    type: 'number',
    min: '1',
    placeholder: 'coins',
    'data-field': 'amount',
    disabled: closed,
  }) as HTMLInputElement;
  const feedback = el('p', { class: 'error', 'data-error': '' });
  const banner = el('p', { class: 'success', 'data-banner': 'success' });
  const donate = el(
    'button',
    {
      'data-control': 'donate',
      disabled: closed,
      onclick: () => {
        feedback.textContent = '';
        banner.textContent = '';
        const value = Number(amount.value);
        // zero or junk never leaves the browser
        if (!Number.isInteger(value) || value < 1) {
          feedback.textContent = 'Enter a whole number of coins, at least 1.';
          return;
        }
        card.append(
          confirmStrip(
            `Send ${fmtCoins(value)} to "${campaign.title}"?`,
            async () => {
              await actions.donate(campaign, value);
              banner.textContent = `Donated ${fmtCoins(value)}. Thank you.`;
            },
            (err) => {
              feedback.textContent = errorText(err);
            },
          ),
        );
      },
    },
    closed ? 'Goal reached' : 'Donate',
  );
  card.append(el('div', { class: 'row' }, amount, donate), feedback, banner);
  return card;
}

function newCampaignForm(actions: Actions): HTMLElement {
  const title = el('input', { type: 'text', placeholder: 'title' }) as HTMLInputElement;
  const goal = el('input', { type: 'number', min: '1', placeholder: 'goal (coins)' }) as HTMLInputElement;
  const description = el('input', { type: 'text', placeholder: 'what for?' }) as HTMLInputElement;
  const feedback = el('p', { class: 'error', 'data-error': '' });
  const submit = el(
    'button',
    {
      'data-control': 'create-campaign',
      onclick: () => {
        feedback.textContent = '';
        const goalValue = Number(goal.value);
        if (!title.value || !Number.isInteger(goalValue) || goalValue < 1) {
          feedback.textContent = 'A campaign needs a title and a positive coin goal.';
          return;
        }
        actions
          .createCampaign(title.value, goalValue, description.value)
          .catch((err) => {
            feedback.textContent = errorText(err);
          });
      },
    },
    'Start campaign',
  );
  return section(
    'Start a campaign',
    el('div', { class: 'row' }, title, goal, description, submit),
    feedback,
  );
}

// -- supervisor ---------------------------------------------------------------

export function renderSupervisorPanel(
  snapshot: Snapshot,
  session: Session,
  actions: Actions,
  ratingPreview: RatingPreview,
  lastAllocation: Allocation | null,
): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'supervisor' });

  root.append(newPositionForm(actions));

  const mine = snapshot.positions.filter((p) => p.supervisor_id === session.subject_id);
  const list = el('div', { class: 'cards' });
  for (const posting of mine) {
    list.append(postingAdminCard(posting, actions, ratingPreview, lastAllocation));
  }
  root.append(
    section('My postings', mine.length ? list : emptyState('Nothing posted yet.')),
  );

  const active = snapshot.assignments.filter((a) => a.status === 'ACTIVE');
  const rateList = el('div', { class: 'cards' });
  for (const assignment of active) rateList.append(rateCard(assignment, actions));
  root.append(
    section(
      'Rate finished work',
      active.length ? rateList : emptyState('No active assignments.'),
    ),
  );

  return root;
}

function newPositionForm(actions: Actions): HTMLElement {
  const type = el('input', { type: 'text', placeholder: 'position type, e.g. canteen' }) as HTMLInputElement;
  const rate = el('input', { type: 'number', min: '1', placeholder: 'coins/hour' }) as HTMLInputElement;
  const cap = el('input', { type: 'text', placeholder: 'weekly hour cap', value: '10' }) as HTMLInputElement;
  const description = el('input', { type: 'text', placeholder: 'description' }) as HTMLInputElement;
  const feedback = el('p', { class: 'error', 'data-error': '' });
  const submit = el(
    'button',
    {
      'data-control': 'create-position',
      'data-requires-role': 'SUPERVISOR',
      onclick: () => {
        feedback.textContent = '';
        const rateValue = Number(rate.value);
        if (!type.value || !Number.isInteger(rateValue) || rateValue < 1) {
          feedback.textContent = 'A posting needs a type and a positive hourly rate.';
          return;
        }
        actions
          .createPosition(type.value, rateValue, cap.value || '10', description.value)
          .catch((err) => {
            feedback.textContent = errorText(err);
          });
      },
    },
    'Post position',
  );
  return section(
    'Post a position',
    el('div', { class: 'row' }, type, rate, cap, description, submit),
    feedback,
  );
}

function postingAdminCard(
  posting: Posting,
  actions: Actions,
  ratingPreview: RatingPreview,
  lastAllocation: Allocation | null,
): HTMLElement {
  const card = el(
    'article',
    { class: 'card', 'data-card': 'posting-admin' },
    el('h3', {}, posting.position_type),
    statusBadge(posting.status),
    el('p', {}, `${fmtCoins(posting.hourly_rate)}/hour`),
  );

  const allocation =
    lastAllocation && lastAllocation.position_id === posting.position_id
      ? lastAllocation
      : null;

  const applicants = el('ul', { class: 'applicants' });
  for (const studentId of posting.applicant_ids) {
    const preview = ratingPreview(studentId, posting.position_type);
    const row = el(
      'li',
      { 'data-row': 'applicant' },
      el('span', {}, studentId),
      el('span', { class: 'rating' }, ` rating ${preview.rating}`),
      preview.isNew ? el('span', { class: 'flag', 'data-flag': 'new' }, 'new') : null,
    );
    if (allocation && allocation.winner === studentId) {
      row.setAttribute('data-winner', '');
      row.classList.add('winner');
    }
    applicants.append(row);
  }

  if (posting.applicant_ids.length) {
    card.append(applicants);
  } else {
    card.append(
      el(
        'p',
        { class: 'muted', 'data-note': 'no-applicants' },
        'No applicants yet. The draw needs at least one; share the posting and check back.',
      ),
    );
  }

  const feedback = el('p', { class: 'error', 'data-error': '' });
  if (posting.status === 'OPEN' && posting.applicant_ids.length > 0) {
    card.append(
      el(
        'button',
        {
          'data-control': 'allocate',
          'data-requires-role': 'SUPERVISOR',
          onclick: () => {
            feedback.textContent = '';
            actions.allocate(posting.position_id).catch((err) => {
              feedback.textContent = errorText(err);
            });
          },
        },
        'Run the draw',
      ),
    );
  }
  card.append(feedback);

  if (allocation) {
    const probabilities = el('ul', {});
    for (const [student, probability] of Object.entries(allocation.probabilities)) {
      probabilities.append(el('li', {}, `${student}: ${probability}`));
    }
    card.append(
      el(
        'div',
        { class: 'audit', 'data-audit': '' },
        el('h4', {}, `Winner: ${allocation.winner}`),
        el(
          'p',
          {},
          `seed ${allocation.seed}, ${allocation.cold_start ? 'cold start (uniform)' : 'rating-weighted'}`,
        ),
        probabilities,
      ),
    );
  }

  return card;
}

function rateCard(assignment: Assignment, actions: Actions): HTMLElement {
  const rating = el('input', {
    type: 'number',
    min: '1',
    max: '10',
    placeholder: '1-10',
  }) as HTMLInputElement;
  const feedback = el('p', { class: 'error', 'data-error': '' });
  return el(
    'article',
    { class: 'card', 'data-card': 'rate' },
    el('h3', {}, `${assignment.student_id} · ${assignment.position_type}`),
    el('div', { class: 'row' },
      rating,
      el(
        'button',
        {
          'data-control': 'rate',
          'data-requires-role': 'SUPERVISOR',
          onclick: () => {
            feedback.textContent = '';
            const value = Number(rating.value);
            if (!Number.isInteger(value) || value < 1 || value > 10) {
              feedback.textContent = 'Ratings are whole numbers from 1 to 10.';
              return;
            }
            actions.rate(assignment.assignment_id, value).catch((err) => {
              feedback.textContent = errorText(err);
            });
          },
        },
        'Rate and close',
      ),
    ),
    feedback,
  );
}

// -- faculty ------------------------------------------------------------------

export function renderFacultyPanel(
  snapshot: Snapshot,
  session: Session,
  actions: Actions,
): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'faculty' });

  const topic = el('input', { type: 'text', placeholder: 'project topic' }) as HTMLInputElement;
  const students = el('input', {
    type: 'text',
    placeholder: 'student ids, comma separated',
  }) as HTMLInputElement;
  const createFeedback = el('p', { class: 'error', 'data-error': '' });
  root.append(
    section(
      'Start a project',
      el('div', { class: 'row' },
        topic,
        students,
        el(
          'button',
          {
            'data-control': 'create-project',
            'data-requires-role': 'FACULTY',
            onclick: () => {
              createFeedback.textContent = '';
              const ids = students.value.split(',').map((s) => s.trim()).filter(Boolean);
              if (!topic.value || ids.length === 0) {
                createFeedback.textContent = 'A project needs a topic and at least one student.';
                return;
              }
              actions.createProject(topic.value, ids).catch((err) => {
                createFeedback.textContent = errorText(err);
              });
            },
          },
          'Create project',
        ),
      ),
      createFeedback,
    ),
  );

  const reportId = el('input', { type: 'text', placeholder: 'report id' }) as HTMLInputElement;
  const novelty = el('input', { type: 'number', min: '0', max: '10', placeholder: 'novelty' }) as HTMLInputElement;
  const effort = el('input', { type: 'number', min: '0', max: '10', placeholder: 'effort' }) as HTMLInputElement;
  const relevance = el('input', { type: 'number', min: '0', max: '10', placeholder: 'relevance' }) as HTMLInputElement;
  const gradeFeedback = el('p', { class: 'error', 'data-error': '' });
  root.append(
    section(
      'Grade a report',
      el('div', { class: 'row' },
        reportId, novelty, effort, relevance,
        el(
          'button',
          {
            'data-control': 'grade',
            'data-requires-role': 'FACULTY',
            onclick: () => {
              gradeFeedback.textContent = '';
              const grades = [novelty.value, effort.value, relevance.value].map(Number);
              if (!reportId.value || grades.some((g) => !Number.isInteger(g) || g < 0 || g > 10)) {
                gradeFeedback.textContent = 'Grades are whole numbers from 0 to 10.';
                return;
              }
              actions
                .grade(reportId.value, grades[0]!, grades[1]!, grades[2]!)
                .catch((err) => {
                  gradeFeedback.textContent = errorText(err);
                });
            },
          },
          'Grade',
        ),
      ),
      gradeFeedback,
    ),
  );

  const publicationId = el('input', { type: 'text', placeholder: 'publication id' }) as HTMLInputElement;
  const verifyFeedback = el('p', { class: 'error', 'data-error': '' });
  root.append(
    section(
      'Verify a publication',
      el('div', { class: 'row' },
        publicationId,
        el(
          'button',
          {
            'data-control': 'verify-publication',
            'data-requires-role': 'FACULTY',
            onclick: () => {
              verifyFeedback.textContent = '';
              if (!publicationId.value) {
                verifyFeedback.textContent = 'Paste the publication id to verify.';
                return;
              }
              actions.verifyPublication(publicationId.value).catch((err) => {
                verifyFeedback.textContent = errorText(err);
              });
            },
          },
          'Mark verified',
        ),
      ),
      verifyFeedback,
    ),
  );

  return root;
}

// -- ranklists (read-only, any role) ------------------------------------------

export function renderRanklists(snapshot: Snapshot): HTMLElement {
  const root = el('div', { class: 'view', 'data-view': 'ranklists' });
  const lists = snapshot.ranklists;
  if (!lists) {
    root.append(section('Ranklists', emptyState('Ranklists not loaded yet.')));
    return root;
  }
  for (const list of [lists.PUBLISHED, lists.MENTOR_RATED]) {
    const table = el('table', { class: 'ranklist' });
    table.append(
      el('tr', {}, el('th', {}, '#'), el('th', {}, 'student'), el('th', {}, 'score')),
    );
    for (const entry of list.entries) {
      table.append(
        el(
          'tr',
          { 'data-row': 'rank' },
          el('td', {}, String(entry.rank)),
          el('td', {}, entry.student_id),
          el('td', {}, entry.score),
        ),
      );
    }
    root.append(
      section(list.kind, list.entries.length ? table : emptyState('Nobody ranked yet.')),
    );
  }
  return root;
}

export { clear };
