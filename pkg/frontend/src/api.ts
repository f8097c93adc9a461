// Typed client for the node's REST surface. One fetch wrapper, one error
// shape; every method mirrors a route and nothing else in the app talks to
// the network. The bearer token is the only credential that ever leaves the
// browser.

import { CanonicalValue } from './canonical.js';

export type Role = 'STUDENT' | 'FACULTY' | 'SUPERVISOR' | 'VALIDATOR';

export interface Session {
  subject_id: string;
  role: Role;
  wallet_address: string | null;
}

export interface Balance {
  address: string;
  balance: number;
  nonce: number; // next expected nonce, which is what a new transaction needs
}

export interface RanklistEntry {
  student_id: string;
  score: string; // 4-decimal fixed point travels as a string
  rank: number;
}

export interface Ranklist {
  kind: string;
  entries: RanklistEntry[];
}

export interface Ranklists {
  MENTOR_RATED: Ranklist;
  PUBLISHED: Ranklist;
}

export interface Posting {
  position_id: string;
  supervisor_id: string;
  position_type: string;
  hourly_rate: number;
  weekly_hour_cap: string;
  status: 'OPEN' | 'ASSIGNED' | 'COMPLETED';
  applicant_ids: string[];
  description: string;
  created_at: number;
}

export interface Campaign {
  campaign_id: string;
  beneficiary: string;
  beneficiary_id?: string;
  title: string;
  description: string;
  goal: number;
  raised: number;
  status: 'OPEN' | 'CLOSED';
  created_at: number;
}

export interface Allocation {
  position_id: string;
  winner: string;
  cold_start: boolean;
  seed: number;
  applicants: string[];
  probabilities: Record<string, string>; // exact fractions as "num/den"
}

export interface Assignment {
  assignment_id: string;
  position_id: string;
  student_id: string;
  supervisor_id: string;
  position_type: string;
  hourly_rate: number;
  weekly_hour_cap: string;
  started_at: number;
  status: 'ACTIVE' | 'COMPLETED';
  allocation?: Allocation;
}

export interface TxReceipt {
  tx_id: string;
  status: string;
}

export interface TimesheetReceipt {
  timesheet: Record<string, CanonicalValue>;
  amount: number;
  tx_id: string;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly details: Record<string, unknown> = {},
    readonly status = 0,
  ) {
    super(message);
  }
}

type Json = Record<string, unknown>;

export class ApiClient {
  constructor(
    readonly baseUrl: string = '',
    private token: string | null = null,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError('NETWORK', `node unreachable: ${String(err)}`);
    }
    const text = await response.text();
    let parsed: Json = {};
    try {
      parsed = text ? (JSON.parse(text) as Json) : {};
    } catch {
      throw new ApiError('BAD_RESPONSE', `not JSON: ${text.slice(0, 120)}`, {}, response.status);
    }
    if (!response.ok) {
      throw new ApiError(
        typeof parsed.code === 'string' ? parsed.code : 'HTTP_' + response.status,
        typeof parsed.message === 'string' ? parsed.message : response.statusText,
        (parsed.details as Record<string, unknown>) ?? {},
        response.status,
      );
    }
    return parsed as T;
  }

  login(token: string): Promise<Session> {
    return this.request<Session>('POST', '/auth/login', { token });
  }

  balance(address: string): Promise<Balance> {
    return this.request<Balance>('GET', `/wallets/${address}/balance`);
  }

  async chainHeight(): Promise<number> {
    const chain = await this.request<{ height: number }>('GET', '/chain');
    return chain.height;
  }

  ranklists(): Promise<Ranklists> {
    return this.request<Ranklists>('GET', '/ranklists');
  }

  async positions(status?: string): Promise<Posting[]> {
    const query = status ? `?status=${encodeURIComponent(status)}` : '';
    const body = await this.request<{ positions: Posting[] }>('GET', `/positions${query}`);
    return body.positions;
  }

  async campaigns(status?: string): Promise<Campaign[]> {
    const query = status ? `?status=${encodeURIComponent(status)}` : '';
    const body = await this.request<{ campaigns: Campaign[] }>('GET', `/campaigns${query}`);
    return body.campaigns;
  }

  submitTransaction(tx: Record<string, CanonicalValue>): Promise<TxReceipt> {
    return this.request<TxReceipt>('POST', '/transactions', tx);
  }

  donate(campaignId: string, tx: Record<string, CanonicalValue>): Promise<TxReceipt> {
    return this.request<TxReceipt>('POST', `/campaigns/${campaignId}/donate`, tx);
  }

  createCampaign(title: string, goal: number, description = ''): Promise<Campaign> {
    return this.request<Campaign>('POST', '/campaigns', { title, goal, description });
  }

  applyToPosition(positionId: string): Promise<Json> {
    return this.request<Json>('POST', `/positions/${positionId}/apply`, {});
  }

  createPosition(
    positionType: string,
    hourlyRate: number,
    weeklyHourCap: string,
    description = '',
  ): Promise<Posting> {
    return this.request<Posting>('POST', '/positions', {
      position_type: positionType,
      hourly_rate: hourlyRate,
      weekly_hour_cap: weeklyHourCap,
      description,
    });
  }

  allocatePosition(positionId: string): Promise<Assignment> {
    return this.request<Assignment>('POST', `/positions/${positionId}/allocate`, {});
  }

  submitTimesheet(assignmentId: string, weekStart: string, hours: string): Promise<TimesheetReceipt> {
    return this.request<TimesheetReceipt>('POST', `/assignments/${assignmentId}/timesheets`, {
      week_start: weekStart,
      hours,
    });
  }

  rateAssignment(assignmentId: string, rating: number): Promise<Json> {
    return this.request<Json>('POST', `/assignments/${assignmentId}/rate`, { rating });
  }

  createProject(topic: string, studentIds: string[]): Promise<Json> {
    return this.request<Json>('POST', '/projects', { topic, student_ids: studentIds });
  }

  submitReport(projectId: string, contentRef: string): Promise<Json> {
    return this.request<Json>('POST', `/projects/${projectId}/reports`, {
      content_ref: contentRef,
    });
  }

  gradeReport(
    reportId: string,
    novelty: number,
    effort: number,
    relevance: number,
    feedback = '',
  ): Promise<Json> {
    return this.request<Json>('POST', `/reports/${reportId}/grade`, {
      novelty,
      effort,
      relevance,
      feedback,
    });
  }

  addPublication(projectId: string, journalName: string, impactFactor: string, nAuthors: number): Promise<Json> {
    return this.request<Json>('POST', `/projects/${projectId}/publications`, {
      journal_name: journalName,
      impact_factor: impactFactor,
      n_authors: nAuthors,
    });
  }

  verifyPublication(publicationId: string): Promise<Json> {
    return this.request<Json>('POST', `/publications/${publicationId}/verify`, {});
  }
}
