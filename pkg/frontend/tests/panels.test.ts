import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import { CurvesResponse } from '../src/api.js';
import { renderPowerPanel, renderPowerPanels, SERIES_ORDER } from '../src/panels.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

function loadServiceCurves(name: string): CurvesResponse {
  return JSON.parse(readFileSync(join(FIXTURES, `service_curves_${name}.json`), 'utf8'));
}

function loadCliCsv(name: string): { header: string[]; rows: string[][] } {
  const text = readFileSync(join(FIXTURES, `cli_curves_${name}.csv`), 'utf8');
  const lines = text.trim().split('\n');
  return {
    header: lines[0].split(','),
    rows: lines.slice(1).map((line) => line.split(',')),
  };
}

function extractCells(html: string, series: string): string[] {
  const pattern = new RegExp(`<td data-series="${series}">([^<]*)</td>`, 'g');
  return Array.from(html.matchAll(pattern), (m) => m[1]);
}

// The acceptance contract: every number the UI shows equals the CLI's CSV
// output for identical parameters. Both derive from the same service, so
// the comparison is exact string equality after display formatting.
describe('panel values versus CLI CSV fixtures', () => {
  const scenarios = ['s1', 's2', 's3'];

  it.each(scenarios)('scenario %s matches column by column', (name) => {
    const curves = loadServiceCurves(name);
    const csv = loadCliCsv(name);
    const html = renderPowerPanel(0, curves, 0.85);

    const columns = ['tau', ...SERIES_ORDER];
    for (const column of columns) {
      const csvIndex = csv.header.indexOf(column);
      expect(csvIndex).toBeGreaterThanOrEqual(0);
      const rendered = extractCells(html, column);
      const expected = csv.rows.map((row) => row[csvIndex]);
      expect(rendered).toEqual(expected);
    }
  });

  it('renders one readout per series at the highlighted tau', () => {
    const curves = loadServiceCurves('s1');
    const html = renderPowerPanel(0, curves, 0.85);
    for (const series of SERIES_ORDER) {
      expect(html).toMatch(new RegExp(`data-readout="${series}"`));
    }
    // tau = 0.85 readout for the fixed series is the published 0.848.
    const match = html.match(/data-readout="fixed">([^<]*)</);
    expect(match?.[1]).toBe('0.848158');
  });

  it('omits readouts when tau is off the grid', () => {
    const curves = loadServiceCurves('s1');
    const html = renderPowerPanel(0, curves, 0.62);
    expect(html).not.toContain('data-readout');
  });
});

describe('multi-panel rendering', () => {
  it('emits one section per eta value', () => {
    const curves = loadServiceCurves('s1');
    const html = renderPowerPanels(
      [0, 0.1, 0.5].map((eta) => ({ eta, curves })),
      0.85,
    );
    expect(html.match(/class="power-panel"/g)).toHaveLength(3);
    expect(html).toContain('data-eta="0.5"');
  });

  it('marks panels stale when asked', () => {
    const curves = loadServiceCurves('s1');
    const html = renderPowerPanels([{ eta: 0, curves }], 0.85, true);
    expect(html).toContain('power-panel stale');
  });

  it('draws one polyline per series plus a tau marker', () => {
    const curves = loadServiceCurves('s1');
    const html = renderPowerPanel(0, curves, 0.85);
    expect(html.match(/<polyline/g)).toHaveLength(SERIES_ORDER.length);
    expect(html).toContain('tau-marker');
  });
});
