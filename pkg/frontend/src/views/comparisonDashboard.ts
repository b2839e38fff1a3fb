// Comparison dashboard: pick two or three generated batches, rate any
// that lack ratings, then show mean novelty/usefulness per set and the
// Mann-Whitney (two sets) or Kruskal-Wallis (three sets) report with
// significance markers.

import type { ApiClient } from '../api';
import { clear, el } from '../dom';
import type { WorkbenchState } from '../state';
import type { ComparisonReportInfo, OpportunityInfo, RatingInfo } from '../types';

export interface ComparisonDashboard {
  element: HTMLElement;
  refresh(): Promise<void>;
}

function significance(p: number): string {
  if (p < 0.01) return '**';
  if (p < 0.05) return '*';
  return '';
}

export function createComparisonDashboard(
  api: ApiClient,
  state: WorkbenchState,
): ComparisonDashboard {
  const batchList = el('div', { class: 'batch-list' });
  const runButton = el(
    'button',
    { class: 'primary', 'data-action': 'compare' },
    ['Rate and compare selected sets'],
  ) as HTMLButtonElement;
  const statusLine = el('p', { class: 'panel-status', 'data-field': 'comparison-status' });
  const output = el('div', { class: 'comparison-output' });
  const element = el('section', { class: 'comparison-dashboard', 'data-view': 'compare' }, [
    el('h2', {}, ['Compare rated sets']),
    batchList,
    runButton,
    statusLine,
    output,
  ]);

  let batches = new Map<string, OpportunityInfo[]>();

  async function loadBatches(): Promise<void> {
    batches = new Map();
    if (!state.projectId) return;
    for (const card of await api.opportunities(state.projectId)) {
      const group = batches.get(card.batch_id) ?? [];
      group.push(card);
      batches.set(card.batch_id, group);
    }
  }

  function renderBatchList(): void {
    clear(batchList);
    if (batches.size === 0) {
      batchList.append(el('p', {}, ['Generate some opportunities first.']));
      return;
    }
    for (const [batchId, cards] of batches) {
      const box = el('input', { type: 'checkbox', 'data-batch': batchId }) as HTMLInputElement;
      box.checked = state.comparisonSelections.includes(batchId);
      box.addEventListener('change', () => {
        state.toggleComparisonSelection(batchId);
        refreshButton();
      });
      const sample = cards[0];
      batchList.append(
        el('label', { class: 'batch-row' }, [
          box,
          `${batchId}: ${cards.length} ${sample.kind.replace('_', ' ')} `
            + `(${sample.novelty_level.replace(/_/g, ' ')}, depth ${sample.pivot_depth})`,
        ]),
      );
    }
  }

  function refreshButton(): void {
    const n = state.comparisonSelections.length;
    runButton.disabled = n < 2 || n > 3;
    statusLine.textContent =
      n < 2
        ? 'Select two sets for a pairwise test or three for a group test.'
        : n === 2
          ? 'Two sets selected: Mann-Whitney.'
          : n === 3
            ? 'Three sets selected: Kruskal-Wallis.'
            : 'Select at most three sets.';
  }

  async function ensureRatings(ids: string[], kind: OpportunityInfo['kind']): Promise<void> {
    if (!state.projectId) return;
    const rated = new Set((await api.ratings(state.projectId)).map((r: RatingInfo) => r.opportunity_id));
    const missing = ids.filter((id) => !rated.has(id));
    if (missing.length === 0) return;
    const challenge = state.form.customText || 'Assess these opportunities for the project challenge';
    const job = await api.rate(state.projectId, {
      opportunity_ids: missing,
      challenge,
      kind,
    });
    const finished = await api.pollJob(state.projectId, job.job_id);
    if (finished.state === 'failed') {
      throw new Error(finished.error?.message ?? 'rating failed');
    }
  }

  function meanRow(label: string, ratings: RatingInfo[], ids: Set<string>): HTMLElement {
    const mine = ratings.filter((r) => ids.has(r.opportunity_id));
    const meanOf = (values: number[]) =>
      values.length ? values.reduce((a, b) => a + b, 0) / values.length : NaN;
    const novelty = meanOf(mine.map((r) => r.novelty));
    const usefulness = meanOf(mine.map((r) => r.usefulness));
    return el('tr', {}, [
      el('td', {}, [label]),
      el('td', {}, [String(mine.length)]),
      el('td', { 'data-cell': 'mean-novelty' }, [novelty.toFixed(2)]),
      el('td', { 'data-cell': 'mean-usefulness' }, [usefulness.toFixed(2)]),
    ]);
  }

  function reportRow(report: ComparisonReportInfo): HTMLElement {
    const marker = significance(report.p_value);
    const statistic =
      report.test === 'mann_whitney'
        ? `U=${report.statistic.toFixed(1)}, z=${(report.z ?? 0).toFixed(4)}`
        : `H=${report.statistic.toFixed(4)}, df=${report.df}`;
    return el('tr', { 'data-report-metric': report.metric }, [
      el('td', {}, [report.metric]),
      el('td', {}, [report.test.replace('_', '-')]),
      el('td', {}, [statistic]),
      el('td', { 'data-cell': 'p-value' }, [`p=${report.p_value.toFixed(5)}${marker}`]),
    ]);
  }

  async function runComparison(): Promise<void> {
    if (!state.projectId) return;
    const selected = state.comparisonSelections.slice(0, 3);
    const sets = selected.map((batchId) => batches.get(batchId) ?? []);
    statusLine.textContent = 'Rating and comparing...';
    runButton.disabled = true;
    try {
      for (const cards of sets) {
        await ensureRatings(
          cards.map((c) => c.opportunity_id),
          cards[0]?.kind ?? 'business',
        );
      }
      const idSets = sets.map((cards) => cards.map((c) => c.opportunity_id));
      const payload =
        idSets.length === 2
          ? { set_a: idSets[0], set_b: idSets[1] }
          : { groups: idSets };
      const { reports } = await api.compare(state.projectId, payload);
      const ratings = await api.ratings(state.projectId);
      clear(output);
      const meansTable = el('table', { class: 'means' }, [
        el('thead', {}, [
          el('tr', {}, [
            el('th', {}, ['set']),
            el('th', {}, ['n']),
            el('th', {}, ['mean novelty']),
            el('th', {}, ['mean usefulness']),
          ]),
        ]),
        el(
          'tbody',
          {},
          selected.map((batchId, i) =>
            meanRow(batchId, ratings, new Set(idSets[i])),
          ),
        ),
      ]);
      const reportTable = el('table', { class: 'reports' }, [
        el('thead', {}, [
          el('tr', {}, [
            el('th', {}, ['metric']),
            el('th', {}, ['test']),
            el('th', {}, ['statistic']),
            el('th', {}, ['p']),
          ]),
        ]),
        el('tbody', {}, reports.map(reportRow)),
      ]);
      output.append(meansTable, reportTable);
      statusLine.textContent = 'Comparison complete. * p<0.05, ** p<0.01.';
    } catch (error) {
      statusLine.textContent = `Comparison failed: ${(error as Error).message}`;
    } finally {
      refreshButton();
    }
  }

  runButton.addEventListener('click', () => void runComparison());

  async function refresh(): Promise<void> {
    await loadBatches();
    renderBatchList();
    refreshButton();
  }

  return { element, refresh };
}
