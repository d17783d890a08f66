import { ResizeResponse, ServiceError } from './api.js';
import { BannerThresholds, recommend } from './banner.js';
import { fmt6 } from './format.js';

function bannerHtml(tau: number, eta: number, thresholds: BannerThresholds): string {
  const rec = recommend(tau, eta, thresholds);
  if (rec === 'stop-now') {
    return (
      '<div class="banner banner-stop" data-banner="stop-now">' +
      `Stop now and analyze: τ ≥ ${thresholds.tauStopThreshold} with dilution ` +
      `within the negligibility bound (η ≤ ${thresholds.etaNegligibleBound}).</div>`
    );
  }
  return (
    '<div class="banner banner-explore" data-banner="explore-designs">' +
    'Explore group-sequential or resized designs before committing.</div>'
  );
}

function resizeRows(label: string, result: ResizeResponse): string {
  const rows = [
    ['n1_ceiling', String(result.n1_ceiling)],
    ['n1_continuous', fmt6(result.n1_continuous)],
    ['xi', fmt6(result.xi)],
    ['achieved_power', fmt6(result.achieved_power)],
  ];
  const cells = rows
    .map(([key, value]) => `<td data-field="${label}.${key}">${value}</td>`)
    .join('');
  return `<tr><th>${label}</th>${cells}</tr>`;
}

export function renderResizeCard(
  tau: number,
  eta: number,
  thresholds: BannerThresholds,
  fixed: ResizeResponse,
  gsd: ResizeResponse,
): string {
  return [
    '<section class="resize-card">',
    `  ${bannerHtml(tau, eta, thresholds)}`,
    '  <table class="resize-values">',
    '    <thead><tr><th></th><th>added patients</th><th>exact</th><th>ξ</th><th>power</th></tr></thead>',
    '    <tbody>',
    `      ${resizeRows('fixed', fixed)}`,
    `      ${resizeRows('gsd', gsd)}`,
    '    </tbody>',
    '  </table>',
    fixed.note ? `  <p class="note">${fixed.note}</p>` : '',
    '</section>',
  ]
    .filter(Boolean)
    .join('\n');
}

export function renderInfeasibleCard(
  tau: number,
  eta: number,
  thresholds: BannerThresholds,
  error: ServiceError,
): string {
  return [
    '<section class="resize-card infeasible">',
    `  ${bannerHtml(tau, eta, thresholds)}`,
    '  <div class="banner banner-error" data-banner="infeasible">',
    `    Planned power unreachable: ${error.message}`,
    '  </div>',
    '</section>',
  ].join('\n');
}
