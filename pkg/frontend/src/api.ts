import { ScenarioState } from './types.js';

export interface CurvesResponse {
  axis_name: string;
  axis_values: number[];
  series: Record<string, number[]>;
}

export interface ResizeResponse {
  xi: number;
  n1_continuous: number;
  n1_ceiling: number;
  branch: string;
  achieved_power: number;
  note: string | null;
  c1?: number;
  c2?: number;
}

export interface ServiceError {
  code: string;
  message: string;
  parameter: string | null;
}

export class ApiError extends Error {
  readonly status: number;
  readonly detail: ServiceError;

  constructor(status: number, detail: ServiceError) {
    super(detail.message);
    this.status = status;
    this.detail = detail;
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload),
    });
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body as ServiceError);
    }
    return body as T;
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchFn(`${this.baseUrl}/v1/health`);
      return resp.ok;
    } catch {
      return false;
    }
  }

  curves(state: ScenarioState, eta: number): Promise<CurvesResponse> {
    return this.post('/v1/curves', {
      alpha: state.alpha,
      power: state.powerPlanned,
      eta,
      psi: state.psi,
    });
  }

  powerAtFraction(state: ScenarioState): Promise<{ power: number }> {
    return this.post('/v1/power/fraction', {
      alpha: state.alpha,
      power: state.powerPlanned,
      tau: state.tau,
    });
  }

  resizeFixed(state: ScenarioState): Promise<ResizeResponse> {
    return this.post('/v1/resize/fixed', {
      n: state.n,
      tau: state.tau,
      alpha: state.alpha,
      power: state.powerPlanned,
      eta: state.eta,
      psi: state.psi,
    });
  }

  resizeGsd(state: ScenarioState): Promise<ResizeResponse> {
    return this.post('/v1/resize/gsd', {
      scheme: state.scheme,
      rho_spend: state.rhoSpend,
      n: state.n,
      tau: state.tau,
      alpha: state.alpha,
      power: state.powerPlanned,
      eta: state.eta,
      psi: state.psi,
    });
  }
}
