import { CurvesResponse } from './api.js';
import { fmt6 } from './format.js';

export const SERIES_ORDER = [
  'fixed',
  'pocock_stage1',
  'pocock_overall',
  'obf_stage1',
  'obf_overall',
] as const;

export const SERIES_LABELS: Record<string, string> = {
  fixed: 'Analyze now',
  pocock_stage1: 'Pocock stage 1',
  pocock_overall: 'Pocock overall',
  obf_stage1: 'OBF stage 1',
  obf_overall: 'OBF overall',
};

const SVG_W = 360;
const SVG_H = 220;
const PAD = 34;

function xPos(tau: number, taus: number[]): number {
  const lo = taus[0];
  const hi = taus[taus.length - 1];
  return PAD + ((tau - lo) / (hi - lo || 1)) * (SVG_W - 2 * PAD);
}

function yPos(power: number): number {
  return SVG_H - PAD - power * (SVG_H - 2 * PAD);
}

function polyline(taus: number[], values: number[], cls: string): string {
  const pts = taus
    .map((tau, i) => `${xPos(tau, taus).toFixed(1)},${yPos(values[i]).toFixed(1)}`)
    .join(' ');
  return `<polyline class="${cls}" fill="none" points="${pts}" />`;
}

function chartSvg(curves: CurvesResponse, currentTau: number): string {
  const taus = curves.axis_values;
  const lines = SERIES_ORDER.filter((name) => name in curves.series)
    .map((name) => polyline(taus, curves.series[name], `series-${name}`))
    .join('\n    ');
  const marker =
    currentTau >= taus[0] && currentTau <= taus[taus.length - 1]
      ? `<line class="tau-marker" x1="${xPos(currentTau, taus).toFixed(1)}" y1="${PAD}" ` +
        `x2="${xPos(currentTau, taus).toFixed(1)}" y2="${SVG_H - PAD}" />`
      : '';
  return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img">\n    ${lines}\n    ${marker}\n  </svg>`;
}

// Every number in the table is a service value passed through display
// formatting; nothing is interpolated or recomputed here.
function valuesTable(curves: CurvesResponse): string {
  const names = SERIES_ORDER.filter((name) => name in curves.series);
  const head = ['tau', ...names].map((h) => `<th>${h}</th>`).join('');
  const rows = curves.axis_values
    .map((tau, i) => {
      const cells = names
        .map((name) => `<td data-series="${name}">${fmt6(curves.series[name][i])}</td>`)
        .join('');
      return `<tr><td data-series="tau">${fmt6(tau)}</td>${cells}</tr>`;
    })
    .join('\n      ');
  return `<table class="curve-values"><thead><tr>${head}</tr></thead><tbody>\n      ${rows}\n    </tbody></table>`;
}

function readouts(curves: CurvesResponse, currentTau: number): string {
  const idx = curves.axis_values.findIndex((t) => t === currentTau);
  if (idx < 0) return '';
  const items = SERIES_ORDER.filter((name) => name in curves.series)
    .map(
      (name) =>
        `<li>${SERIES_LABELS[name]}: <strong data-readout="${name}">` +
        `${fmt6(curves.series[name][idx])}</strong></li>`,
    )
    .join('');
  return `<ul class="readouts">${items}</ul>`;
}

export function renderPowerPanel(
  eta: number,
  curves: CurvesResponse,
  currentTau: number,
  stale = false,
): string {
  return [
    `<section class="power-panel${stale ? ' stale' : ''}" data-eta="${eta}">`,
    `  <h3>Dilution η = ${eta}</h3>`,
    `  ${chartSvg(curves, currentTau)}`,
    `  ${readouts(curves, currentTau)}`,
    `  ${valuesTable(curves)}`,
    `</section>`,
  ].join('\n');
}

export function renderPowerPanels(
  panels: { eta: number; curves: CurvesResponse }[],
  currentTau: number,
  stale = false,
): string {
  return panels
    .map(({ eta, curves }) => renderPowerPanel(eta, curves, currentTau, stale))
    .join('\n');
}

export function renderUnreachableBanner(): string {
  return (
    '<div class="banner banner-error" data-banner="unreachable">' +
    'Service unreachable. Showing last known curves.' +
    ' <button data-action="retry">Retry</button></div>'
  );
}
