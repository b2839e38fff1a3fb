// Generation panel: the request form (kind, five-stop novelty slider,
// up to three creative qualities, custom text) plus the result cards.
// Every card shows its provenance: depth badge and a parent link for
// pivots, so a chain can be traced to its root.

import type { ApiClient, GenerateParams } from '../api';
import { clear, el } from '../dom';
import type { WorkbenchState } from '../state';
import {
  CREATIVE_QUALITIES,
  MAX_CUSTOM_TEXT,
  NOVELTY_LABELS,
  NOVELTY_LEVELS,
  OPPORTUNITY_KINDS,
} from '../types';
import type { JobInfo, OpportunityInfo } from '../types';

export interface GenerationPanel {
  element: HTMLElement;
  refreshForm(): void;
  refreshResults(): Promise<void>;
}

export function createGenerationPanel(
  api: ApiClient,
  state: WorkbenchState,
  callbacks: { onBatchesChanged(): void },
): GenerationPanel {
  const kindSelect = el('select', { 'data-field': 'kind' });
  for (const kind of OPPORTUNITY_KINDS) {
    kindSelect.append(el('option', { value: kind }, [kind.replace('_', ' ')]));
  }
  kindSelect.addEventListener('change', () => {
    state.form.kind = kindSelect.value as (typeof OPPORTUNITY_KINDS)[number];
  });

  const noveltySlider = el('input', {
    type: 'range',
    min: '0',
    max: String(NOVELTY_LEVELS.length - 1),
    step: '1',
    'data-field': 'novelty',
  }) as HTMLInputElement;
  const noveltyLabel = el('span', { class: 'novelty-label', 'data-field': 'novelty-label' });
  noveltySlider.addEventListener('input', () => {
    state.setNoveltyStop(Number(noveltySlider.value));
    noveltyLabel.textContent = NOVELTY_LABELS[state.form.noveltyLevel];
  });

  const qualityBoxes = new Map<string, HTMLInputElement>();
  const qualitiesContainer = el('fieldset', { class: 'qualities' }, [
    el('legend', {}, ['Creative qualities (up to 3)']),
  ]);
  for (const quality of CREATIVE_QUALITIES) {
    const box = el('input', {
      type: 'checkbox',
      'data-quality': quality,
    }) as HTMLInputElement;
    box.addEventListener('change', () => {
      if (!state.toggleQuality(quality)) {
        box.checked = false;
        return;
      }
      refreshQualityBoxes();
    });
    qualityBoxes.set(quality, box);
    qualitiesContainer.append(el('label', { class: 'quality' }, [box, quality]));
  }

  function refreshQualityBoxes(): void {
    for (const [quality, box] of qualityBoxes) {
      box.checked = state.form.qualities.includes(quality);
      box.disabled = state.qualityDisabled(quality);
    }
  }

  const customText = el('textarea', {
    'data-field': 'custom-text',
    maxlength: String(MAX_CUSTOM_TEXT),
    placeholder: 'Describe a specific idea you want to explore',
  }) as HTMLTextAreaElement;
  customText.addEventListener('input', () => state.setCustomText(customText.value));

  const generateButton = el(
    'button',
    { class: 'primary', 'data-action': 'generate' },
    ['Generate 10 opportunities'],
  ) as HTMLButtonElement;
  const statusLine = el('p', { class: 'panel-status', 'data-field': 'generation-status' });
  const results = el('div', { class: 'opportunity-cards' });

  const element = el('section', { class: 'generation-panel', 'data-view': 'generate' }, [
    el('h2', {}, ['Generate opportunities']),
    el('div', { class: 'form-grid' }, [
      el('label', {}, ['Opportunities type ', kindSelect]),
      el('label', {}, [
        'How unusual should the new opportunities be? ',
        noveltySlider,
        noveltyLabel,
      ]),
      qualitiesContainer,
      el('label', {}, ['Describe a specific idea you want to explore ', customText]),
      generateButton,
      statusLine,
    ]),
    results,
  ]);

  function refreshForm(): void {
    kindSelect.value = state.form.kind;
    noveltySlider.value = String(state.noveltyStop());
    noveltyLabel.textContent = NOVELTY_LABELS[state.form.noveltyLevel];
    customText.value = state.form.customText;
    refreshQualityBoxes();
    generateButton.disabled = !state.canGenerate();
    if (!state.canGenerate()) {
      statusLine.textContent = 'Select at least one described space to generate.';
    } else {
      statusLine.textContent = `Target spaces: ${state.selectedSpaces.join(', ')}`;
    }
  }

  function formParams(spaceIds: string[]): GenerateParams {
    return {
      kind: state.form.kind,
      space_ids: spaceIds,
      novelty_level: state.form.noveltyLevel,
      qualities: [...state.form.qualities],
      custom_text: state.form.customText,
    };
  }

  async function runJob(start: Promise<JobInfo>): Promise<void> {
    if (!state.projectId) return;
    statusLine.textContent = 'Working...';
    generateButton.disabled = true;
    try {
      const job = await start;
      const finished = await api.pollJob(state.projectId, job.job_id);
      if (finished.state === 'failed') {
        statusLine.textContent = `Failed: ${finished.error?.message ?? 'unknown error'}`;
      } else {
        statusLine.textContent = 'Done.';
        await refreshResults();
        callbacks.onBatchesChanged();
      }
    } catch (error) {
      statusLine.textContent = `Failed: ${(error as Error).message}`;
    } finally {
      generateButton.disabled = !state.canGenerate();
    }
  }

  generateButton.addEventListener('click', () => {
    const described = state.selectedSpaces.filter((id) => state.describedSpaces.has(id));
    if (!state.projectId || described.length === 0) return;
    void runJob(api.generate(state.projectId, formParams([described[0]])));
  });

  function pivotOn(card: OpportunityInfo): void {
    if (!state.projectId) return;
    state.selectOpportunity(card.opportunity_id);
    const described = state.selectedSpaces.filter((id) => state.describedSpaces.has(id));
    if (described.length === 0) return;
    const spaceIds = described.length >= 2 ? described.slice(0, 2) : [described[0]];
    void runJob(
      api.pivot(state.projectId, {
        ...formParams(spaceIds),
        parent_opportunity_id: card.opportunity_id,
      }),
    );
  }

  function renderCard(card: OpportunityInfo): HTMLElement {
    const selected = state.selectedOpportunity === card.opportunity_id;
    const header = el('header', {}, [
      el('strong', {}, [card.title]),
      el('span', { class: 'badge kind' }, [card.kind.replace('_', ' ')]),
      el('span', { class: 'badge depth', 'data-depth': String(card.pivot_depth) }, [
        card.provenance === 'direct' ? 'direct' : `pivot depth ${card.pivot_depth}`,
      ]),
    ]);
    if (card.centroid_distance !== null) {
      header.append(
        el('span', { class: 'chip distance' }, [`d=${card.centroid_distance.toFixed(3)}`]),
      );
    }
    const body: (Node | string)[] = [header, el('p', {}, [card.description])];
    if (card.parent_opportunity_id) {
      body.push(
        el(
          'a',
          {
            class: 'parent-link',
            href: `#${card.parent_opportunity_id}`,
            'data-parent': card.parent_opportunity_id,
          },
          [`parent: ${card.parent_opportunity_id}`],
        ),
      );
    }
    const pivotButton = el(
      'button',
      { class: 'pivot', 'data-action': 'pivot', onclick: (e: Event) => {
        e.stopPropagation();
        pivotOn(card);
      } },
      ['Pivot'],
    ) as HTMLButtonElement;
    pivotButton.disabled = !state.canGenerate();
    body.push(pivotButton);
    return el(
      'article',
      {
        class: `opportunity-card${selected ? ' selected' : ''}`,
        id: card.opportunity_id,
        'data-opportunity-id': card.opportunity_id,
        'data-depth': String(card.pivot_depth),
        'data-parent-id': card.parent_opportunity_id ?? '',
        onclick: () => {
          state.selectOpportunity(selected ? null : card.opportunity_id);
          void refreshResults();
        },
      },
      body,
    );
  }

  async function refreshResults(): Promise<void> {
    if (!state.projectId) {
      clear(results);
      return;
    }
    const cards = await api.opportunities(state.projectId);
    clear(results);
    // newest batches first, stable within a batch
    cards.sort((a, b) => (a.batch_id < b.batch_id ? 1 : a.batch_id > b.batch_id ? -1 : 0));
    for (const card of cards) {
      results.append(renderCard(card));
    }
  }

  return { element, refreshForm, refreshResults };
}
