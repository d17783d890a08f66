import { ApiClient, ApiError, CurvesResponse, ResizeResponse } from './api.js';
import { BannerThresholds, DEFAULT_THRESHOLDS } from './banner.js';
import { renderPowerPanels, renderUnreachableBanner } from './panels.js';
import { renderInfeasibleCard, renderResizeCard } from './resizeCard.js';
import { RequestScheduler } from './scheduler.js';
import { DEFAULT_STATE, ScenarioState, validateState } from './types.js';

const DEBOUNCE_MS = 250;
const DEFAULT_ETA_PANELS = [0, 0.1, 0.5];

interface AppElements {
  form: HTMLFormElement;
  panels: HTMLElement;
  resize: HTMLElement;
  status: HTMLElement;
  issues: HTMLElement;
}

function readNumber(form: HTMLFormElement, name: string, fallback: number): number {
  const input = form.elements.namedItem(name) as HTMLInputElement | null;
  if (!input || input.value.trim() === '') return fallback;
  const value = Number(input.value);
  return Number.isNaN(value) ? fallback : value;
}

function readState(form: HTMLFormElement): ScenarioState {
  const schemeInput = form.elements.namedItem('scheme') as HTMLSelectElement | null;
  return {
    alpha: readNumber(form, 'alpha', DEFAULT_STATE.alpha),
    powerPlanned: readNumber(form, 'power', DEFAULT_STATE.powerPlanned),
    tau: readNumber(form, 'tau', DEFAULT_STATE.tau),
    eta: readNumber(form, 'eta', DEFAULT_STATE.eta),
    psi: readNumber(form, 'psi', DEFAULT_STATE.psi),
    r: readNumber(form, 'r', DEFAULT_STATE.r),
    scheme: (schemeInput?.value as ScenarioState['scheme']) ?? DEFAULT_STATE.scheme,
    rhoSpend: readNumber(form, 'rho_spend', NaN) || null,
    n: readNumber(form, 'n', DEFAULT_STATE.n),
  };
}

function readThresholds(form: HTMLFormElement): BannerThresholds {
  return {
    tauStopThreshold: readNumber(
      form, 'tau_threshold', DEFAULT_THRESHOLDS.tauStopThreshold,
    ),
    etaNegligibleBound: readNumber(
      form, 'eta_bound', DEFAULT_THRESHOLDS.etaNegligibleBound,
    ),
  };
}

function readEtaPanels(form: HTMLFormElement): number[] {
  const input = form.elements.namedItem('eta_panels') as HTMLInputElement | null;
  if (!input || input.value.trim() === '') return DEFAULT_ETA_PANELS;
  const values = input.value
    .split(',')
    .map((v) => Number(v.trim()))
    .filter((v) => !Number.isNaN(v));
  return values.length > 0 ? values : DEFAULT_ETA_PANELS;
}

export function startApp(root: Document, baseUrl: string): void {
  const els: AppElements = {
    form: root.querySelector('#scenario-form') as HTMLFormElement,
    panels: root.querySelector('#power-panels') as HTMLElement,
    resize: root.querySelector('#resize-card') as HTMLElement,
    status: root.querySelector('#service-status') as HTMLElement,
    issues: root.querySelector('#validation-issues') as HTMLElement,
  };
  const api = new ApiClient(baseUrl);
  let lastPanels: { eta: number; curves: CurvesResponse }[] | null = null;

  const curvesScheduler = new RequestScheduler<{ eta: number; curves: CurvesResponse }[]>(
    DEBOUNCE_MS,
    (panels) => {
      lastPanels = panels;
      const state = readState(els.form);
      els.panels.innerHTML = renderPowerPanels(panels, state.tau);
      els.status.innerHTML = '';
    },
    () => {
      els.status.innerHTML = renderUnreachableBanner();
      if (lastPanels) {
        const state = readState(els.form);
        els.panels.innerHTML = renderPowerPanels(lastPanels, state.tau, true);
      }
    },
  );

  const resizeScheduler = new RequestScheduler<{
    fixed: ResizeResponse;
    gsd: ResizeResponse;
  }>(
    DEBOUNCE_MS,
    ({ fixed, gsd }) => {
      const state = readState(els.form);
      els.resize.innerHTML = renderResizeCard(
        state.tau, state.eta, readThresholds(els.form), fixed, gsd,
      );
    },
    (err) => {
      const state = readState(els.form);
      if (err instanceof ApiError && err.detail.code === 'infeasible') {
        els.resize.innerHTML = renderInfeasibleCard(
          state.tau, state.eta, readThresholds(els.form), err.detail,
        );
      } else {
        els.status.innerHTML = renderUnreachableBanner();
      }
    },
  );

  const refresh = () => {
    const state = readState(els.form);
    const issues = validateState(state);
    els.issues.innerHTML = issues
      .map((issue) => `<li data-field="${issue.field}">${issue.message}</li>`)
      .join('');
    if (issues.length > 0) return;
    const etas = readEtaPanels(els.form);
    curvesScheduler.request(async () => {
      const curves = await Promise.all(etas.map((eta) => api.curves(state, eta)));
      return etas.map((eta, i) => ({ eta, curves: curves[i] }));
    });
    resizeScheduler.request(async () => {
      const [fixed, gsd] = await Promise.all([
        api.resizeFixed(state),
        api.resizeGsd(state),
      ]);
      return { fixed, gsd };
    });
  };

  els.form.addEventListener('input', refresh);
  els.status.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset.action === 'retry') refresh();
  });
  refresh();
}

declare global {
  interface Window {
    TRIAL_RESIZER_BASE_URL?: string;
  }
}

if (typeof window !== 'undefined' && typeof document !== 'undefined') {
  const base = window.TRIAL_RESIZER_BASE_URL ?? 'http://127.0.0.1:8080';
  window.addEventListener('DOMContentLoaded', () => startApp(document, base));
}
