/** Payload types mirroring the service JSON schemas (schema_version 1). */

export interface CoherencePayload {
  text_sim: number;
  cluster_sim: number;
  temporal_factor: number;
  combined: number;
  cluster_share: number;
}

export interface MapEdgePayload {
  from: string;
  to: string;
  kind: "storyline" | "support";
  coherence: CoherencePayload;
}

export interface MapPayload {
  schema_version: number;
  nodes: string[];
  edges: MapEdgePayload[];
  storylines: string[][];
  main_storyline: number;
  params: Record<string, unknown>;
  flags: string[];
}

export interface KeywordPayload {
  term: string;
  score: number;
}

export interface ClusterInfoPayload {
  id: number;
  medoid: string;
  size: number;
  keywords: KeywordPayload[];
}

export interface ClustersPayload {
  schema_version: number;
  clusters: ClusterInfoPayload[];
  membership: number[][];
  labels: number[];
  docs: string[];
}

export interface ProjectionPointPayload {
  id: string;
  x: number;
  y: number;
  cluster: number;
}

export interface ProjectionPayload {
  schema_version: number;
  points: ProjectionPointPayload[];
}

export interface StorylineNamePayload {
  index: number;
  name: string;
  fallback: boolean;
  score: {
    c_entity: number;
    c_abstract: number;
    c_coverage: number;
    o_overlap: number;
    total: number;
  };
}

export interface ImportantEventPayload {
  id: string;
  content_score: number;
  structure_score: number;
  top_content: boolean;
  top_structure: boolean;
  emphasized: boolean;
}

export interface StructurePayload {
  schema_version: number;
  storylines: StorylineNamePayload[];
  important: ImportantEventPayload[];
}

export interface TopicPayload {
  side: "source" | "target";
  doc: string;
  cluster: number;
  keywords: KeywordPayload[];
}

export interface EntityOverlapPayload {
  a: string;
  b: string;
  overlap: number;
}

export interface AttributionPayload {
  token: string;
  phi: number;
  side: "source" | "target";
}

export interface NonConnectionPayload {
  below_threshold: boolean;
  margin: number;
  top_negative: AttributionPayload[];
}

export interface ExplanationPayload {
  label: { primary: "Topical" | "Similarity"; entity: boolean };
  topics: TopicPayload[];
  entities: EntityOverlapPayload[];
  attributions: AttributionPayload[];
  coherence: CoherencePayload;
  non_connection?: NonConnectionPayload;
}

export interface SessionCreatedPayload {
  schema_version: number;
  session_id: string;
  job_id: string;
}

export interface JobPayload {
  schema_version: number;
  id: string;
  kind: string;
  state: "queued" | "running" | "done" | "failed" | "cancelled";
  progress: number;
  error: string | null;
}

export interface CorpusCreatedPayload {
  schema_version: number;
  corpus_id: string;
  document_count: number;
}

/** Everything one finished session renders from. */
export interface SessionData {
  sessionId: string;
  map: MapPayload;
  clusters: ClustersPayload;
  projection: ProjectionPayload;
  structure: StructurePayload;
}
