// Scripted walkthrough against the real, mock-backed project service:
// create a project, upload assets, run the pipeline, select a narrow
// space, submit the baseline generation form, pivot on the first card,
// and verify the selection caps the UI enforces.

import { beforeAll, describe, expect, inject, it } from 'vitest';

import { ApiClient } from '../src/api';
import { createApp, type App } from '../src/app';

const BASELINE_TEXT =
  'Develop an innovative business opportunity that support seaside towns to ' +
  'regenerate by attracting new investment linked to new areas of growth';

const THEMES: Array<[string, string]> = [
  ['harbour', 'pier fishing boats tides moorings quay lighthouse nets catch trawler'],
  ['bakery', 'bread ovens flour pastry croissant dough yeast loaves baking counter'],
  ['museum', 'exhibits curation galleries artifacts heritage archive tours displays'],
  ['cycling', 'bicycles lanes helmets pedals commuting routes racks repair wheels'],
  ['gardens', 'planting allotments compost seeds greenhouse flowers beds watering'],
  ['theatre', 'stage rehearsal actors lighting costumes audience tickets curtains'],
];

function lcg(seed: number): () => number {
  let value = seed >>> 0;
  return () => {
    value = (value * 1664525 + 1013904223) >>> 0;
    return value / 2 ** 32;
  };
}

function fixtureFiles(): File[] {
  const random = lcg(7);
  const files: File[] = [];
  for (let i = 0; i < 3; i += 1) {
    const paragraphs: string[] = [];
    for (const [name, vocab] of THEMES.slice(i * 2, i * 2 + 2)) {
      const words = vocab.split(' ');
      for (let p = 0; p < 4; p += 1) {
        const body = Array.from(
          { length: 120 },
          () => words[Math.floor(random() * words.length)],
        ).join(' ');
        paragraphs.push(`The ${name} project notes. ${body}.`);
      }
    }
    files.push(
      new File([paragraphs.join('\n\n')], `asset_${i}.txt`, { type: 'text/plain' }),
    );
  }
  return files;
}

async function waitFor(
  condition: () => boolean,
  label: string,
  timeoutMs = 90_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) return;
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
  throw new Error(`timed out waiting for ${label}`);
}

function field<T extends HTMLElement>(selector: string): T {
  const node = document.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
}

function statusText(): string {
  return field<HTMLElement>('[data-field="app-status"]').textContent ?? '';
}

function setValue(input: HTMLInputElement | HTMLTextAreaElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event('input', { bubbles: true }));
  input.dispatchEvent(new Event('change', { bubbles: true }));
}

describe('consultant workflow', () => {
  let app: App;

  beforeAll(() => {
    document.body.innerHTML = '<div id="app"></div>';
    const api = new ApiClient(inject('apiBase'), window.fetch.bind(window));
    app = createApp(document.getElementById('app') as HTMLElement, api);
  });

  it('runs the whole journey against the mock-backed service', async () => {
    // create the project
    setValue(field<HTMLInputElement>('[data-field="project-name"]'), 'ui walkthrough');
    field<HTMLButtonElement>('[data-action="create-project"]').click();
    await waitFor(() => statusText().includes('ready'), 'project creation');

    // before discovery the explorer offers the guided action
    await waitFor(
      () => document.querySelector('[data-action="run-discovery"]') !== null,
      'guided discovery action',
    );

    // upload three plain-text assets
    const fileInput = field<HTMLInputElement>('[data-field="asset-files"]');
    Object.defineProperty(fileInput, 'files', { value: fixtureFiles(), configurable: true });
    fileInput.dispatchEvent(new Event('change', { bubbles: true }));
    await waitFor(() => statusText().includes('Uploaded 3'), 'asset upload');

    // pipeline: process, then the guided discovery button, then describe
    field<HTMLButtonElement>('[data-action="process"]').click();
    await waitFor(() => statusText().includes('Processing assets finished'), 'processing');
    field<HTMLButtonElement>('[data-action="run-discovery"]').click();
    await waitFor(() => statusText().includes('Discovering spaces finished'), 'discovery');
    field<HTMLButtonElement>('[data-action="describe"]').click();
    await waitFor(() => statusText().includes('Describing spaces finished'), 'description');

    // the narrow tab shows between 15 and 30 space cards
    field<HTMLButtonElement>('[data-granularity="narrow"]').click();
    await waitFor(
      () => document.querySelectorAll('.space-card').length >= 15,
      'narrow space cards',
    );
    const narrowCards = document.querySelectorAll('.space-card');
    expect(narrowCards.length).toBeGreaterThanOrEqual(15);
    expect(narrowCards.length).toBeLessThanOrEqual(30);

    // select a narrow space; the generate button becomes available
    (narrowCards[0] as HTMLElement).click();
    await waitFor(
      () => document.querySelectorAll('.space-card[data-selected="true"]').length === 1,
      'space selection',
    );
    const generateButton = field<HTMLButtonElement>('[data-action="generate"]');
    await waitFor(() => !generateButton.disabled, 'generate enabled');

    // the baseline request form: business, highly unusual, no qualities
    const kindSelect = field<HTMLSelectElement>('[data-field="kind"]');
    kindSelect.value = 'business';
    kindSelect.dispatchEvent(new Event('change', { bubbles: true }));
    setValue(field<HTMLInputElement>('[data-field="novelty"]'), '4');
    expect(field<HTMLElement>('[data-field="novelty-label"]').textContent).toBe(
      'highly unusual',
    );
    setValue(field<HTMLTextAreaElement>('[data-field="custom-text"]'), BASELINE_TEXT);
    expect(app.state.form.qualities).toEqual([]);

    generateButton.click();
    await waitFor(
      () => document.querySelectorAll('.opportunity-card[data-depth="0"]').length === 10,
      'ten direct cards',
    );
    const directCards = document.querySelectorAll('.opportunity-card[data-depth="0"]');
    expect(directCards.length).toBe(10);
    const firstId = (directCards[0] as HTMLElement).dataset.opportunityId as string;

    // pivot on the first card
    const pivotButton = directCards[0].querySelector(
      '[data-action="pivot"]',
    ) as HTMLButtonElement;
    expect(pivotButton.disabled).toBe(false);
    pivotButton.click();
    await waitFor(
      () => document.querySelectorAll('.opportunity-card[data-depth="1"]').length === 10,
      'ten pivot cards',
    );
    const pivotCards = Array.from(
      document.querySelectorAll('.opportunity-card[data-depth="1"]'),
    ) as HTMLElement[];
    expect(pivotCards).toHaveLength(10);
    for (const card of pivotCards) {
      expect(card.dataset.parentId).toBe(firstId);
      const link = card.querySelector('.parent-link') as HTMLAnchorElement;
      expect(link).not.toBeNull();
      expect(link.getAttribute('data-parent')).toBe(firstId);
    }
  });

  it('enforces the three-quality cap in the form', async () => {
    const boxes = Array.from(
      document.querySelectorAll('[data-quality]'),
    ) as HTMLInputElement[];
    expect(boxes.length).toBe(22);
    for (const box of boxes.slice(0, 3)) {
      box.checked = true;
      box.dispatchEvent(new Event('change', { bubbles: true }));
    }
    expect(app.state.form.qualities).toHaveLength(3);
    const fourth = boxes[3];
    expect(fourth.disabled).toBe(true);
    // a disabled change still cannot sneak past the state guard
    fourth.checked = true;
    fourth.dispatchEvent(new Event('change', { bubbles: true }));
    expect(app.state.form.qualities).toHaveLength(3);
    expect(fourth.checked).toBe(false);
    // untick one to restore a slot for later tests
    boxes[0].checked = false;
    boxes[0].dispatchEvent(new Event('change', { bubbles: true }));
    expect(fourth.disabled).toBe(false);
  });

  it('enforces the two-space selection cap, dropping the oldest', async () => {
    const cards = Array.from(document.querySelectorAll('.space-card')) as HTMLElement[];
    expect(cards.length).toBeGreaterThanOrEqual(3);
    const ids = cards.map((c) => c.dataset.spaceId as string);
    // the first card is already selected from the walkthrough; add two more
    (cards[1] as HTMLElement).click();
    await waitFor(
      () => app.state.selectedSpaces.length === 2,
      'two spaces selected',
    );
    (cards[2] as HTMLElement).click();
    await waitFor(
      () =>
        document.querySelectorAll('.space-card[data-selected="true"]').length === 2,
      'cap applied',
    );
    expect(app.state.selectedSpaces).toEqual([ids[1], ids[2]]);
    expect(
      (document.querySelector(`[data-space-id="${ids[0]}"]`) as HTMLElement).dataset
        .selected,
    ).toBe('false');
  });
});
