// Space explorer: granularity tabs, a 2-D map of spaces (marker size
// proportional to member count), and selectable space cards showing the
// ten topic terms and the 100-word description.

import { ApiRequestError } from '../api';
import type { ApiClient } from '../api';
import { clear, el } from '../dom';
import type { WorkbenchState } from '../state';
import type { Granularity, GranularitySetInfo, SpaceInfo } from '../types';

const GRANULARITIES: Granularity[] = ['broad', 'typical', 'narrow'];

export interface SpaceExplorer {
  element: HTMLElement;
  refresh(): Promise<void>;
}

export function createSpaceExplorer(
  api: ApiClient,
  state: WorkbenchState,
  callbacks: {
    onSelectionChanged(): void;
    onRunDiscovery(): void;
  },
): SpaceExplorer {
  const tabs = el('div', { class: 'tabs', role: 'tablist' });
  const map = el('div', { class: 'space-map' });
  const cards = el('div', { class: 'space-cards' });
  const status = el('p', { class: 'explorer-status' });
  const element = el('section', { class: 'space-explorer', 'data-view': 'explorer' }, [
    el('h2', {}, ['Opportunity spaces']),
    tabs,
    status,
    map,
    cards,
  ]);

  function renderTabs(): void {
    clear(tabs);
    for (const granularity of GRANULARITIES) {
      tabs.append(
        el(
          'button',
          {
            class: `tab${state.granularity === granularity ? ' active' : ''}`,
            'data-granularity': granularity,
            onclick: () => {
              state.granularity = granularity;
              void refresh();
            },
          },
          [granularity],
        ),
      );
    }
  }

  function renderMap(spaces: SpaceInfo[]): void {
    clear(map);
    const maxMembers = Math.max(1, ...spaces.map((s) => s.member_chunk_ids.length));
    const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    svg.setAttribute('viewBox', '0 0 100 100');
    svg.setAttribute('class', 'space-map-svg');
    for (const space of spaces) {
      if (!space.map_xy) continue;
      const [x, y] = space.map_xy;
      const circle = document.createElementNS('http://www.w3.org/2000/svg', 'circle');
      circle.setAttribute('cx', String(5 + x * 90));
      circle.setAttribute('cy', String(5 + (1 - y) * 90));
      const radius = 2 + 6 * (space.member_chunk_ids.length / maxMembers);
      circle.setAttribute('r', String(radius));
      circle.setAttribute('data-space-marker', space.space_id);
      circle.setAttribute(
        'class',
        `space-marker${state.isSpaceSelected(space.space_id) ? ' selected' : ''}`,
      );
      circle.addEventListener('click', () => toggle(space.space_id));
      const title = document.createElementNS('http://www.w3.org/2000/svg', 'title');
      title.textContent = `${space.label || space.space_id} (${space.member_chunk_ids.length} chunks)`;
      circle.append(title);
      svg.append(circle);
    }
    map.append(svg);
  }

  function toggle(spaceId: string): void {
    state.selectSpace(spaceId);
    void refresh();
    callbacks.onSelectionChanged();
  }

  function renderCard(space: SpaceInfo): HTMLElement {
    const selected = state.isSpaceSelected(space.space_id);
    const terms = el(
      'ul',
      { class: 'term-list' },
      space.topic_terms.map((t) =>
        el('li', {}, [`${t.rank}. ${t.term} (${t.weight.toFixed(2)})`]),
      ),
    );
    const badges: HTMLElement[] = [];
    if (space.flags.includes('short_topic_list')) {
      badges.push(el('span', { class: 'badge warning' }, ['short topic list']));
    }
    if (!space.description) {
      badges.push(el('span', { class: 'badge' }, ['not described']));
    }
    return el(
      'article',
      {
        class: `space-card${selected ? ' selected' : ''}`,
        'data-space-id': space.space_id,
        'data-selected': selected ? 'true' : 'false',
        onclick: () => toggle(space.space_id),
      },
      [
        el('h3', {}, [space.label || space.space_id]),
        el('p', { class: 'meta' }, [
          `${space.member_chunk_ids.length} chunks, ${space.distinct_term_count} distinct terms`,
        ]),
        ...badges,
        terms,
        el('p', { class: 'description' }, [space.description || '']),
      ],
    );
  }

  async function refresh(): Promise<void> {
    renderTabs();
    if (!state.projectId) {
      status.textContent = 'Create or open a project to explore its spaces.';
      clear(map);
      clear(cards);
      return;
    }
    let gset: GranularitySetInfo;
    try {
      gset = await api.spaces(state.projectId, state.granularity);
    } catch (error) {
      clear(map);
      clear(cards);
      if (error instanceof ApiRequestError && error.body.code === 'StageNotReady') {
        status.textContent = 'Spaces have not been discovered yet.';
        cards.append(
          el(
            'button',
            { class: 'primary', 'data-action': 'run-discovery', onclick: () => callbacks.onRunDiscovery() },
            ['Run discovery'],
          ),
        );
        return;
      }
      status.textContent = `Could not load spaces: ${(error as Error).message}`;
      return;
    }
    state.describedSpaces = new Set(
      gset.spaces.filter((s) => s.description).map((s) => s.space_id),
    );
    if (gset.unreachable) {
      status.textContent = `The ${gset.granularity} granularity is not reachable: ${gset.reason}`;
      clear(map);
      clear(cards);
      return;
    }
    status.textContent =
      `${gset.spaces.length} ${gset.granularity} spaces ` +
      `(target ${gset.target_min}-${gset.target_max}). Select up to 2.`;
    renderMap(gset.spaces);
    clear(cards);
    for (const space of gset.spaces) {
      cards.append(renderCard(space));
    }
  }

  return { element, refresh };
}
