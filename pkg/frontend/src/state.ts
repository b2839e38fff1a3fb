// Workbench state and its interaction rules. Pure logic, no DOM: the
// views render from this and the unit tests drive it directly. The
// checks mirror the server's validation; the server remains the
// authority.

import {
  MAX_CUSTOM_TEXT,
  MAX_QUALITIES,
  MAX_SELECTED_SPACES,
  NOVELTY_LEVELS,
} from './types';
import type { Granularity, NoveltyLevel, OpportunityKind } from './types';

export interface GenerationForm {
  kind: OpportunityKind;
  noveltyLevel: NoveltyLevel;
  qualities: string[];
  customText: string;
}

export class WorkbenchState {
  projectId: string | null = null;
  granularity: Granularity = 'broad';
  selectedSpaces: string[] = [];
  selectedOpportunity: string | null = null;
  comparisonSelections: string[] = [];
  describedSpaces = new Set<string>();
  form: GenerationForm = {
    kind: 'business',
    noveltyLevel: 'highly_unusual',
    qualities: [],
    customText: '',
  };

  /** Toggle a space selection; a third selection drops the oldest. */
  selectSpace(spaceId: string): void {
    const index = this.selectedSpaces.indexOf(spaceId);
    if (index >= 0) {
      this.selectedSpaces.splice(index, 1);
      return;
    }
    this.selectedSpaces.push(spaceId);
    while (this.selectedSpaces.length > MAX_SELECTED_SPACES) {
      this.selectedSpaces.shift();
    }
  }

  isSpaceSelected(spaceId: string): boolean {
    return this.selectedSpaces.includes(spaceId);
  }

  /** Try to toggle a quality; returns false when the cap blocks adding. */
  toggleQuality(quality: string): boolean {
    const index = this.form.qualities.indexOf(quality);
    if (index >= 0) {
      this.form.qualities.splice(index, 1);
      return true;
    }
    if (this.form.qualities.length >= MAX_QUALITIES) return false;
    this.form.qualities.push(quality);
    return true;
  }

  qualityDisabled(quality: string): boolean {
    return (
      this.form.qualities.length >= MAX_QUALITIES &&
      !this.form.qualities.includes(quality)
    );
  }

  setCustomText(text: string): void {
    this.form.customText = text.slice(0, MAX_CUSTOM_TEXT);
  }

  setNoveltyStop(stop: number): void {
    const index = Math.min(Math.max(stop, 0), NOVELTY_LEVELS.length - 1);
    this.form.noveltyLevel = NOVELTY_LEVELS[index];
  }

  noveltyStop(): number {
    return NOVELTY_LEVELS.indexOf(this.form.noveltyLevel);
  }

  /** Generation needs at least one selected space that has a description. */
  canGenerate(): boolean {
    return this.selectedSpaces.some((id) => this.describedSpaces.has(id));
  }

  /** Pivoting additionally needs a selected opportunity. */
  canPivot(): boolean {
    return this.canGenerate() && this.selectedOpportunity !== null;
  }

  selectOpportunity(opportunityId: string | null): void {
    this.selectedOpportunity = opportunityId;
  }

  toggleComparisonSelection(batchId: string): void {
    const index = this.comparisonSelections.indexOf(batchId);
    if (index >= 0) this.comparisonSelections.splice(index, 1);
    else this.comparisonSelections.push(batchId);
  }

  resetForProject(projectId: string | null): void {
    this.projectId = projectId;
    this.selectedSpaces = [];
    this.selectedOpportunity = null;
    this.comparisonSelections = [];
    this.describedSpaces.clear();
  }
}
