// Session and data snapshot.
//
// The API lists postings, campaigns, ranklists, and balances, but has no
// per-student listing of projects or assignments; those accumulate here
// from the receipts of this browser's own POSTs (and from ratings the
// supervisor hands out, which feed the client-side effective-rating
// preview). Views render a Snapshot and never fetch.

import {
  Allocation,
  ApiClient,
  Assignment,
  Balance,
  Campaign,
  Posting,
  Ranklists,
  Session,
} from './api.js';

export interface ProjectCard {
  project_id: string;
  topic: string;
  status: string;
  student_ids: string[];
}

export interface Snapshot {
  chainHeight: number;
  balance: Balance | null;
  ranklists: Ranklists | null;
  positions: Posting[];
  campaigns: Campaign[];
  projects: ProjectCard[];
  assignments: Assignment[];
  notices: string[];
}

export const emptySnapshot = (): Snapshot => ({
  chainHeight: 0,
  balance: null,
  ranklists: null,
  positions: [],
  campaigns: [],
  projects: [],
  assignments: [],
  notices: [],
});

export interface RatingNote {
  student_id: string;
  position_type: string;
  rating: number;
}

export interface AppState {
  session: Session | null;
  snapshot: Snapshot;
  ratingLog: RatingNote[]; // ratings this browser submitted, for previews
  lastAllocation: Allocation | null;
}

export const state: AppState = {
  session: null,
  snapshot: emptySnapshot(),
  ratingLog: [],
  lastAllocation: null,
};

export function pushNotice(text: string): void {
  state.snapshot.notices.unshift(text);
  if (state.snapshot.notices.length > 20) state.snapshot.notices.pop();
}

export function recordProject(card: ProjectCard): void {
  const existing = state.snapshot.projects.findIndex(
    (p) => p.project_id === card.project_id,
  );
  if (existing >= 0) state.snapshot.projects[existing] = card;
  else state.snapshot.projects.push(card);
}

export function recordAssignment(assignment: Assignment): void {
  const existing = state.snapshot.assignments.findIndex(
    (a) => a.assignment_id === assignment.assignment_id,
  );
  if (existing >= 0) state.snapshot.assignments[existing] = assignment;
  else state.snapshot.assignments.push(assignment);
}

// Mirror of the node's allocation preview: mean of known ratings for the
// position type, or the provisional 9 when the student has none on record.
export function effectiveRatingPreview(
  studentId: string,
  positionType: string,
): { rating: number; isNew: boolean } {
  const ratings = state.ratingLog
    .filter((r) => r.student_id === studentId && r.position_type === positionType)
    .map((r) => r.rating);
  if (ratings.length === 0) return { rating: 9, isNew: true };
  const mean = ratings.reduce((a, b) => a + b, 0) / ratings.length;
  return { rating: Math.round(mean * 10000) / 10000, isNew: false };
}

// Per-resource in-flight de-duplication: a poll tick that fires while the
// previous request for the same resource is still out reuses that promise.
const inflight = new Map<string, Promise<unknown>>();

export function dedup<T>(key: string, load: () => Promise<T>): Promise<T> {
  const running = inflight.get(key);
  if (running) return running as Promise<T>;
  const request = load().finally(() => inflight.delete(key));
  inflight.set(key, request);
  return request;
}

export async function refreshSnapshot(client: ApiClient): Promise<void> {
  const address = state.session?.wallet_address ?? null;
  const [height, ranklists, positions, campaigns, balance] = await Promise.all([
    dedup('chain', () => client.chainHeight()).catch(() => state.snapshot.chainHeight),
    dedup('ranklists', () => client.ranklists()).catch(() => state.snapshot.ranklists),
    dedup('positions', () => client.positions()).catch(() => state.snapshot.positions),
    dedup('campaigns', () => client.campaigns()).catch(() => state.snapshot.campaigns),
    address
      ? dedup('balance', () => client.balance(address)).catch(() => state.snapshot.balance)
      : Promise.resolve(null),
  ]);
  state.snapshot.chainHeight = height;
  state.snapshot.ranklists = ranklists;
  state.snapshot.positions = positions;
  state.snapshot.campaigns = campaigns;
  state.snapshot.balance = balance;
}
