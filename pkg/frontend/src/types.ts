/** Shapes of the versioned JSON documents served by the reprolint API. */

export type AnnotationKind = "HQ" | "AS" | "VM" | "MS";

export interface InteractionInfo {
  sourceVertex: string;
  targetVertex: string | null;
  event: string;
  componentId: string | null;
  input: string | null;
  wireframeRef: string | null;
  description: string;
}

export interface ComponentCandidate {
  kind: "component";
  componentId: string;
  label: string;
  score: number | null;
}

export interface EventCandidate {
  kind: "event";
  event: string;
}

export type Candidate = ComponentCandidate | EventCandidate;

export interface Annotation {
  kind: AnnotationKind;
  evidence: {
    interaction?: InteractionInfo;
    interactions?: InteractionInfo[];
    candidates?: Candidate[];
    constituents?: string[];
    values?: Record<string, string>;
    queries?: string[][];
  };
  wireframeRefs: string[];
}

export interface S2REntry {
  orderIndex: number;
  text: string;
  sentenceSpan: [number, number];
  rendered: string;
  tuple: {
    action: string;
    object: string[];
    preposition: string | null;
    object2: string[];
  };
  annotations: Annotation[];
}

export interface MachineReport {
  version: number;
  reportId: string;
  sourceId: string;
  appName: string;
  s2rs: S2REntry[];
  diagnostics: Record<string, unknown>;
  configEcho: Record<string, unknown>;
}

export interface AppInfo {
  appId: string;
  appName: string;
  screens: number;
}

export type JobStatus = "queued" | "running" | "done" | "failed";

export interface JobRecord {
  jobId: string;
  status: JobStatus;
  resultRef?: string;
  error?: string;
}

export interface AssessOverrides {
  depth?: number;
  randIterations?: number;
  randStepsPerIteration?: number;
  similarityThreshold?: number;
  seed?: number;
  exploreBudget?: number;
}
