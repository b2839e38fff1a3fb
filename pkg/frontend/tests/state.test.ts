import { describe, expect, it } from 'vitest';

import { WorkbenchState } from '../src/state';
import { CREATIVE_QUALITIES, NOVELTY_LEVELS } from '../src/types';

describe('space selection', () => {
  it('caps at two, dropping the oldest selection', () => {
    const state = new WorkbenchState();
    state.selectSpace('s1');
    state.selectSpace('s2');
    expect(state.selectedSpaces).toEqual(['s1', 's2']);
    state.selectSpace('s3');
    expect(state.selectedSpaces).toEqual(['s2', 's3']);
  });

  it('clicking a selected space deselects it', () => {
    const state = new WorkbenchState();
    state.selectSpace('s1');
    state.selectSpace('s1');
    expect(state.selectedSpaces).toEqual([]);
  });
});

describe('creative quality cap', () => {
  it('allows exactly three and reports further toggles blocked', () => {
    const state = new WorkbenchState();
    expect(state.toggleQuality('greener')).toBe(true);
    expect(state.toggleQuality('healthier')).toBe(true);
    expect(state.toggleQuality('younger')).toBe(true);
    expect(state.toggleQuality('inspirational')).toBe(false);
    expect(state.form.qualities).toHaveLength(3);
    expect(state.qualityDisabled('inspirational')).toBe(true);
    expect(state.qualityDisabled('greener')).toBe(false);
    // removing one frees a slot
    expect(state.toggleQuality('greener')).toBe(true);
    expect(state.qualityDisabled('inspirational')).toBe(false);
  });

  it('knows the full catalog size', () => {
    expect(CREATIVE_QUALITIES).toHaveLength(22);
  });
});

describe('action enablement', () => {
  it('generate requires a described selected space', () => {
    const state = new WorkbenchState();
    expect(state.canGenerate()).toBe(false);
    state.selectSpace('s1');
    expect(state.canGenerate()).toBe(false); // selected but not described
    state.describedSpaces.add('s1');
    expect(state.canGenerate()).toBe(true);
  });

  it('pivot additionally requires a selected opportunity', () => {
    const state = new WorkbenchState();
    state.selectSpace('s1');
    state.describedSpaces.add('s1');
    expect(state.canPivot()).toBe(false);
    state.selectOpportunity('opp-1');
    expect(state.canPivot()).toBe(true);
    state.selectOpportunity(null);
    expect(state.canPivot()).toBe(false);
  });
});

describe('form fields', () => {
  it('novelty slider maps five stops to the five levels', () => {
    const state = new WorkbenchState();
    for (let stop = 0; stop < NOVELTY_LEVELS.length; stop += 1) {
      state.setNoveltyStop(stop);
      expect(state.form.noveltyLevel).toBe(NOVELTY_LEVELS[stop]);
    }
    state.setNoveltyStop(99);
    expect(state.form.noveltyLevel).toBe('highly_unusual');
  });

  it('custom text is clipped to the server limit', () => {
    const state = new WorkbenchState();
    state.setCustomText('x'.repeat(2000));
    expect(state.form.customText).toHaveLength(1000);
  });
});
