// DTOs mirroring the project service JSON API.

export type Granularity = 'broad' | 'typical' | 'narrow';
export type OpportunityKind = 'policy' | 'business' | 'technical_design';
export type NoveltyLevel =
  | 'very_prototypical'
  | 'prototypical'
  | 'balanced'
  | 'unusual'
  | 'highly_unusual';

export const NOVELTY_LEVELS: NoveltyLevel[] = [
  'very_prototypical',
  'prototypical',
  'balanced',
  'unusual',
  'highly_unusual',
];

export const NOVELTY_LABELS: Record<NoveltyLevel, string> = {
  very_prototypical: 'very prototypical',
  prototypical: 'prototypical',
  balanced: 'balanced',
  unusual: 'unusual',
  highly_unusual: 'highly unusual',
};

export const OPPORTUNITY_KINDS: OpportunityKind[] = [
  'policy',
  'business',
  'technical_design',
];

export const CREATIVE_QUALITIES = [
  'increased service',
  'added information choice',
  'greater participation',
  'more connected',
  'greater trust',
  'more convenient',
  'greener',
  'more entertaining',
  'more durable',
  'cheaper to run',
  'more adaptable',
  'more informative',
  'more fashionable',
  'inspirational',
  'higher productivity',
  'greater independence',
  'more playful',
  'more beautiful',
  'more direct',
  'healthier',
  'more influential',
  'younger',
] as const;

export const MAX_QUALITIES = 3;
export const MAX_SELECTED_SPACES = 2;
export const MAX_CUSTOM_TEXT = 1000;

export interface ProjectInfo {
  project_id: string;
  name: string;
  created_at: string;
  asset_count?: number;
  has_spaces?: boolean;
}

export interface TopicTerm {
  term: string;
  weight: number;
  rank: number;
}

export interface SpaceInfo {
  space_id: string;
  granularity: Granularity;
  member_chunk_ids: string[];
  topic_terms: TopicTerm[];
  distinct_term_count: number;
  label: string;
  description: string;
  flags: string[];
  map_xy: [number, number] | null;
}

export interface GranularitySetInfo {
  granularity: Granularity;
  spaces: SpaceInfo[];
  target_min: number;
  target_max: number;
  unreachable: boolean;
  reason: string;
}

export interface OpportunityInfo {
  opportunity_id: string;
  kind: OpportunityKind;
  title: string;
  description: string;
  provenance: 'direct' | 'pivot';
  pivot_depth: number;
  source_space_ids: string[];
  novelty_level: NoveltyLevel;
  qualities: string[];
  parent_opportunity_id: string | null;
  centroid_distance: number | null;
  flags: string[];
  batch_id: string;
}

export interface JobInfo {
  job_id: string;
  project_id: string;
  kind: string;
  state: 'queued' | 'running' | 'succeeded' | 'failed';
  progress: number;
  result: Record<string, unknown> | null;
  error: ApiError | null;
}

export interface ApiError {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export interface RatingInfo {
  opportunity_id: string;
  novelty: number;
  usefulness: number;
  rater_tag: string;
  rated_at: string;
}

export interface ComparisonReportInfo {
  test: 'mann_whitney' | 'kruskal_wallis';
  metric: 'novelty' | 'usefulness';
  group_sizes: number[];
  statistic: number;
  p_value: number;
  tie_correction_applied: boolean;
  z?: number;
  df?: number;
  p_one_sided?: number;
}
