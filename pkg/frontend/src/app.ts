// Shell: login, routing, the 10 second poll, and the glue between views
// and the API client. Transactions are signed here, in the browser, with a
// key from the local store; requests carry the bearer token and signed
// bytes, never key material.

import { ApiClient, ApiError, Assignment, Campaign, Role, Session } from './api.js';
import { clear, el } from './dom.js';
import {
  effectiveRatingPreview,
  pushNotice,
  recordAssignment,
  recordProject,
  refreshSnapshot,
  state,
} from './store.js';
import {
  generateKeypair,
  importKey,
  keyForAddress,
  saveKey,
  signTransaction,
  wireFormat,
} from './wallet.js';
import {
  Actions,
  renderCampaignsPanel,
  renderFacultyPanel,
  renderPositionsPanel,
  renderRanklists,
  renderStudentDashboard,
  renderSupervisorPanel,
} from './views.js';

export const POLL_INTERVAL_MS = 10_000;

const SESSION_KEY = 'campuschain.session';

interface StoredSession {
  token: string;
  session: Session;
}

function loadSession(): StoredSession | null {
  try {
    const raw = localStorage.getItem(SESSION_KEY);
    return raw ? (JSON.parse(raw) as StoredSession) : null;
  } catch {
    return null;
  }
}

function storeSession(entry: StoredSession | null): void {
  try {
    if (entry) localStorage.setItem(SESSION_KEY, JSON.stringify(entry));
    else localStorage.removeItem(SESSION_KEY);
  } catch {
    // private-mode storage failures degrade to a per-load session
  }
}

type Route = { path: string; label: string; roles: Role[] | null };

const ROUTES: Route[] = [
  { path: '#/dashboard', label: 'Dashboard', roles: ['STUDENT'] },
  { path: '#/positions', label: 'Positions', roles: ['STUDENT'] },
  { path: '#/postings', label: 'My postings', roles: ['SUPERVISOR'] },
  { path: '#/research', label: 'Research', roles: ['FACULTY'] },
  { path: '#/campaigns', label: 'Campaigns', roles: null },
  { path: '#/ranklists', label: 'Ranklists', roles: null },
];

export class App {
  private actions: Actions;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    readonly client: ApiClient,
    readonly root: HTMLElement,
  ) {
    this.actions = this.buildActions();
  }

  // -- signing ---------------------------------------------------------------

  private signerAddress(): string {
    const address = state.session?.wallet_address;
    if (!address) throw new ApiError('NO_WALLET', 'this account has no wallet address');
    return address;
  }

  private async signedTransfer(to: string, amount: number, memo: string) {
    const address = this.signerAddress();
    const keypair = keyForAddress(address);
    if (!keypair) {
      throw new ApiError(
        'NO_KEY',
        `no key for ${address} in this browser; import it on the login page`,
      );
    }
    const { nonce } = await this.client.balance(address);
    return wireFormat(
      signTransaction(
        {
          kind: 'TRANSFER',
          from: address,
          to,
          amount,
          nonce,
          timestamp: Math.floor(Date.now() / 1000),
          memo,
        },
        keypair,
      ),
    );
  }

  // -- actions ---------------------------------------------------------------

  private buildActions(): Actions {
    const refresh = () => this.refresh();
    const client = this.client;
    return {
      donate: async (campaign: Campaign, amount: number) => {
        const tx = await this.signedTransfer(
          campaign.beneficiary,
          amount,
          `campaign:${campaign.campaign_id}`,
        );
        const receipt = await client.donate(campaign.campaign_id, tx);
        pushNotice(`Donation of ${amount} to "${campaign.title}" is ${receipt.status}.`);
        await refresh();
      },
      createCampaign: async (title, goal, description) => {
        await client.createCampaign(title, goal, description);
        pushNotice(`Campaign "${title}" is live.`);
        await refresh();
      },
      applyToPosition: async (positionId) => {
        await client.applyToPosition(positionId);
        pushNotice('Application in. The draw decides.');
        await refresh();
      },
      submitTimesheet: async (assignment: Assignment, weekStart, hours) => {
        const receipt = await client.submitTimesheet(
          assignment.assignment_id,
          weekStart,
          hours,
        );
        pushNotice(`Wage of ${receipt.amount} paid for week ${weekStart}.`);
        await refresh();
      },
      allocate: async (positionId) => {
        const assignment = await client.allocatePosition(positionId);
        recordAssignment(assignment);
        state.lastAllocation = assignment.allocation ?? null;
        pushNotice(`${assignment.student_id} won the ${assignment.position_type} draw.`);
        await refresh();
      },
      rate: async (assignmentId, rating) => {
        await client.rateAssignment(assignmentId, rating);
        const assignment = state.snapshot.assignments.find(
          (a) => a.assignment_id === assignmentId,
        );
        if (assignment) {
          assignment.status = 'COMPLETED';
          state.ratingLog.push({
            student_id: assignment.student_id,
            position_type: assignment.position_type,
            rating,
          });
        }
        pushNotice('Rating recorded; the posting is closed.');
        await refresh();
      },
      createPosition: async (type, rate, cap, description) => {
        await client.createPosition(type, rate, cap, description);
        pushNotice(`Posted a ${type} position.`);
        await refresh();
      },
      createProject: async (topic, studentIds) => {
        const doc = await client.createProject(topic, studentIds);
        recordProject({
          project_id: String(doc.project_id),
          topic,
          status: 'APPROVED',
          student_ids: studentIds,
        });
        pushNotice(`Project "${topic}" created.`);
        await refresh();
      },
      submitReport: async (projectId, contentRef) => {
        const doc = await client.submitReport(projectId, contentRef);
        pushNotice(`Report ${String(doc.report_id)} submitted.`);
        await refresh();
      },
      grade: async (reportId, novelty, effort, relevance) => {
        await client.gradeReport(reportId, novelty, effort, relevance);
        pushNotice(`Report ${reportId} graded.`);
        await refresh();
      },
      addPublication: async (projectId, journal, impactFactor, nAuthors) => {
        await client.addPublication(projectId, journal, impactFactor, nAuthors);
        pushNotice(`Publication in ${journal} recorded, pending verification.`);
        await refresh();
      },
      verifyPublication: async (publicationId) => {
        await client.verifyPublication(publicationId);
        pushNotice(`Publication ${publicationId} verified.`);
        await refresh();
      },
    };
  }

  // -- lifecycle ---------------------------------------------------------------

  async start(): Promise<void> {
    const stored = loadSession();
    if (stored) {
      this.client.setToken(stored.token);
      state.session = stored.session;
      await this.refresh();
    } else {
      this.render();
    }
    this.timer = setInterval(() => {
      if (state.session) void this.refresh();
    }, POLL_INTERVAL_MS);
    window.addEventListener('hashchange', () => this.render());
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
  }

  async login(token: string): Promise<void> {
    const session = await this.client.login(token);
    this.client.setToken(token);
    state.session = session;
    storeSession({ token, session });
    location.hash = session.role === 'STUDENT' ? '#/dashboard'
      : session.role === 'SUPERVISOR' ? '#/postings'
      : session.role === 'FACULTY' ? '#/research'
      : '#/ranklists';
    await this.refresh();
  }

  logout(): void {
    state.session = null;
    this.client.setToken(null);
    storeSession(null);
    this.render();
  }

  async refresh(): Promise<void> {
    await refreshSnapshot(this.client);
    this.render();
  }

  // -- rendering ---------------------------------------------------------------

  render(): void {
    clear(this.root);
    if (!state.session) {
      this.root.append(this.loginView());
      return;
    }
    this.root.append(this.header(state.session), this.nav(state.session));
    const main = el('main', {});
    main.append(this.routeView(state.session));
    this.root.append(main);
  }

  private routesFor(role: Role): Route[] {
    return ROUTES.filter((r) => r.roles === null || r.roles.includes(role));
  }

  private currentRoute(role: Role): Route {
    const available = this.routesFor(role);
    return available.find((r) => r.path === location.hash) ?? available[0]!;
  }

  private routeView(session: Session): HTMLElement {
    const route = this.currentRoute(session.role);
    const preview = (studentId: string, positionType: string) =>
      effectiveRatingPreview(studentId, positionType);
    switch (route.path) {
      case '#/dashboard':
        return renderStudentDashboard(state.snapshot, session, this.actions);
      case '#/positions':
        return renderPositionsPanel(state.snapshot, session, this.actions);
      case '#/postings':
        return renderSupervisorPanel(
          state.snapshot, session, this.actions, preview, state.lastAllocation,
        );
      case '#/research':
        return renderFacultyPanel(state.snapshot, session, this.actions);
      case '#/campaigns':
        return renderCampaignsPanel(state.snapshot, session, this.actions);
      default:
        return renderRanklists(state.snapshot);
    }
  }

  private header(session: Session): HTMLElement {
    return el(
      'header',
      {},
      el('h1', {}, 'campus chain'),
      el(
        'div',
        { class: 'session-line' },
        el('span', {}, `${session.subject_id} (${session.role.toLowerCase()})`),
        el('span', { class: 'muted' }, ` block ${state.snapshot.chainHeight}`),
        el('button', { class: 'linkish', onclick: () => this.logout() }, 'log out'),
      ),
    );
  }

  private nav(session: Session): HTMLElement {
    const nav = el('nav', { class: 'tabs' });
    for (const route of this.routesFor(session.role)) {
      nav.append(
        el(
          'a',
          {
            href: route.path,
            class: location.hash === route.path ? 'tab active' : 'tab',
          },
          route.label,
        ),
      );
    }
    return nav;
  }

  private loginView(): HTMLElement {
    const token = el('input', {
      type: 'password',
      placeholder: 'bearer token',
      'data-field': 'token',
    }) as HTMLInputElement;
    const feedback = el('p', { class: 'error', 'data-error': '' });
    const loginButton = el(
      'button',
      {
        'data-control': 'login',
        onclick: () => {
          feedback.textContent = '';
          this.login(token.value.trim()).catch((err) => {
            feedback.textContent =
              err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
          });
        },
      },
      'Sign in',
    );

    // key management: import the wallet key this account was provisioned
    // with, or mint a fresh one and hand the address to an admin
    const keyHex = el('input', {
      type: 'password',
      placeholder: 'private key (hex) to import',
      'data-field': 'private-key',
    }) as HTMLInputElement;
    const keyNote = el('p', { class: 'muted', 'data-key-note': '' });
    const importButton = el(
      'button',
      {
        'data-control': 'import-key',
        onclick: () => {
          try {
            const entry = importKey('imported', keyHex.value.trim());
            keyHex.value = '';
            keyNote.textContent = `Key stored for ${entry.address}. It never leaves this browser.`;
          } catch (err) {
            keyNote.textContent = String(err);
          }
        },
      },
      'Import key',
    );
    const generateButton = el(
      'button',
      {
        'data-control': 'generate-key',
        onclick: () => {
          const keypair = generateKeypair();
          saveKey('generated', keypair);
          keyNote.textContent =
            `New key stored for ${keypair.address}. Give that address to the registrar.`;
        },
      },
      'Generate key',
    );

    return el(
      'div',
      { class: 'login' },
      el('h1', {}, 'campus chain'),
      el('p', { class: 'muted' }, 'Sign in with the token from your enrollment mail.'),
      el('div', { class: 'row' }, token, loginButton),
      feedback,
      el('h2', {}, 'Wallet key'),
      el('p', { class: 'muted' }, 'Keys are stored in this browser only.'),
      el('div', { class: 'row' }, keyHex, importButton, generateButton),
      keyNote,
    );
  }
}

export function mount(root: HTMLElement, baseUrl = ''): App {
  const app = new App(new ApiClient(baseUrl), root);
  void app.start();
  return app;
}
