export type Scheme = 'pocock' | 'obrien_fleming' | 'kim_demets_spending';

export interface ScenarioState {
  alpha: number;
  powerPlanned: number;
  tau: number;
  eta: number;
  psi: number;
  r: number;
  scheme: Scheme;
  rhoSpend: number | null;
  n: number;
}

export const DEFAULT_STATE: ScenarioState = {
  alpha: 0.025,
  powerPlanned: 0.9,
  tau: 0.85,
  eta: 0,
  psi: 1,
  r: 1,
  scheme: 'pocock',
  rhoSpend: null,
  n: 100,
};

export interface ValidationIssue {
  field: keyof ScenarioState;
  message: string;
}

// Mirrors the service's preconditions so obviously-bad input never leaves
// the client; the service remains the authority and re-validates everything.
export function validateState(state: ScenarioState): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  if (!(state.alpha > 0 && state.alpha < 0.5)) {
    issues.push({ field: 'alpha', message: 'alpha must be in (0, 0.5)' });
  }
  if (!(state.powerPlanned > 0.5 && state.powerPlanned < 1)) {
    issues.push({ field: 'powerPlanned', message: 'planned power must be in (0.5, 1)' });
  }
  if (!(state.tau > 0 && state.tau <= 1)) {
    issues.push({ field: 'tau', message: 'tau must be in (0, 1]' });
  }
  if (!Number.isFinite(state.eta)) {
    issues.push({ field: 'eta', message: 'eta must be finite' });
  }
  if (!(state.psi > 0)) {
    issues.push({ field: 'psi', message: 'psi must be positive' });
  }
  if (!(state.r > 0)) {
    issues.push({ field: 'r', message: 'allocation ratio must be positive' });
  }
  if (!(state.n > 0)) {
    issues.push({ field: 'n', message: 'planned N must be positive' });
  }
  if (state.scheme === 'kim_demets_spending' && !(state.rhoSpend !== null && state.rhoSpend > 0)) {
    issues.push({ field: 'rhoSpend', message: 'spending exponent must be positive' });
  }
  return issues;
}
