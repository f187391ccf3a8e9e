// Typed client for the singbench HTTP API, plus the pose pump that keeps
// at most one evaluation request in flight (latest slider state wins).

import type { PoseRequest } from "./pose.js";

export interface EntityOut {
  kind: string;
  labels: string[];
  starred: boolean;
}

export interface ConditionOut {
  group: string;
  statement: string;
  verified: string;
  residual: string[];
  entities: EntityOut[];
}

export interface AnalysisOut {
  session: number;
  name: string;
  kind: string;
  structure_class: { name: string; base_points: number; platform_points: number };
  leg_order: string[][];
  auto_reduce: { suggested: boolean; applied: boolean };
  monomial_count: number;
  polynomial: string;
  monomials: { coefficient: number; brackets: string[][] }[];
  condition: ConditionOut;
  stages: string[];
}

export interface CheckOut {
  name: string;
  condition_number: number | null;
  infinite: boolean;
}

export interface ReportOut {
  session: number;
  pose: { translation: number[]; quaternion: number[] };
  raw_value: number;
  normalized_measure: number;
  epsilon: number;
  near_singular: boolean;
  checks: CheckOut[];
  display: { raw_value: string; normalized_measure: string; epsilon: string };
}

export interface EntityPointsOut extends EntityOut {
  points: Record<string, number[]>;
}

export interface EntitiesOut {
  session: number;
  pose: { translation: number[]; quaternion: number[] };
  anchors: { label: string; frame: string; world: number[] }[];
  legs: string[][];
  condition: ConditionOut;
  entities: EntityPointsOut[];
}

export interface ConditionStateOut {
  session: number;
  name: string;
  structure_class: { name: string; base_points: number; platform_points: number };
  monomial_count: number;
  polynomial: string;
  condition: ConditionOut;
}

export interface ApiError {
  status: number;
  detail: unknown;
}

export type ApiResult<T> = { ok: true; data: T } | { ok: false; error: ApiError };

async function request<T>(path: string, init?: RequestInit): Promise<ApiResult<T>> {
  let resp: Response;
  try {
    resp = await fetch(path, init);
  } catch (err) {
    return { ok: false, error: { status: 0, detail: String(err) } };
  }
  const body = await resp.json().catch(() => null);
  if (!resp.ok) {
    return { ok: false, error: { status: resp.status, detail: body?.detail ?? body } };
  }
  return { ok: true, data: body as T };
}

export class ApiClient {
  constructor(private base = "") {}

  loadRobot(doc: unknown, autoReduce = false): Promise<ApiResult<AnalysisOut>> {
    const qs = autoReduce ? "?auto_reduce=true" : "";
    return request<AnalysisOut>(`${this.base}/api/robot${qs}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
  }

  condition(): Promise<ApiResult<ConditionStateOut>> {
    return request<ConditionStateOut>(`${this.base}/api/condition`);
  }

  postPose(req: PoseRequest): Promise<ApiResult<ReportOut>> {
    return request<ReportOut>(`${this.base}/api/pose`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  entities(): Promise<ApiResult<EntitiesOut>> {
    return request<EntitiesOut>(`${this.base}/api/entities`);
  }
}

// ---------------------------------------------------------------------------
// pose pump

export type PoseSender = (req: PoseRequest) => Promise<ApiResult<ReportOut>>;

/**
 * Serializes pose evaluation: one request in flight, the newest queued
 * request replaces any older queued one, and results are delivered in send
 * order. Slider storms therefore degrade to "evaluate the latest pose as
 * fast as the service answers" instead of flooding it.
 */
export class PosePump {
  private inFlight = false;
  private queued: PoseRequest | null = null;

  constructor(
    private send: PoseSender,
    private onResult: (req: PoseRequest, result: ApiResult<ReportOut>) => void,
  ) {}

  push(req: PoseRequest): void {
    if (this.inFlight) {
      this.queued = req; // latest wins
      return;
    }
    void this.fly(req);
  }

  get busy(): boolean {
    return this.inFlight;
  }

  private async fly(req: PoseRequest): Promise<void> {
    this.inFlight = true;
    try {
      let result: ApiResult<ReportOut>;
      try {
        result = await this.send(req);
      } catch (err) {
        result = { ok: false, error: { status: 0, detail: String(err) } };
      }
      this.onResult(req, result);
    } finally {
      this.inFlight = false;
      const next = this.queued;
      this.queued = null;
      if (next !== null) void this.fly(next);
    }
  }
}
