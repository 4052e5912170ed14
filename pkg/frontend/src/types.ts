// Wire types for the cost-service HTTP API. Field names mirror the JSON
// exactly; nothing here is recomputed client-side.

export interface Contract {
  concepts: Record<string, string>;
  elements: Record<string, string[]>;
}

export interface NodeChar {
  mc: [number, number];
  acc: string;
  mg: boolean;
  cnd: string[];
  prg: string | null;
  cap_mb: number;
  sh: boolean;
}

export interface GraphNode {
  id: string;
  name: string;
  type: string;
  char: NodeChar;
  in_contracts: Contract[];
  out_contracts: Contract[];
  remote_link: string | null;
}

export interface GraphDoc {
  tenant: string;
  nodes: GraphNode[];
  edges: [string, string][];
}

export interface Violation {
  code: string;
  ref: string;
  message: string;
  graph?: number;
}

export interface Validation {
  valid: boolean;
  violations: Violation[];
}

export interface Proposal {
  id: string;
  rule: string;
  nodes_removed: number;
  cost_before_eur: number;
  cost_after_eur: number;
  description: string;
  preview_graph_ids: string[];
}

export interface SessionCreated {
  session_id: string;
  validation: Validation;
  revision: number;
  cost?: number;
  cost_eur?: string;
}

export interface SessionState {
  session_id: string;
  catalog_id: string;
  region: string | null;
  revision: number;
  validation: Validation;
  history: Array<Record<string, unknown>>;
  cost?: number;
  cost_eur?: string;
  graphs: GraphDoc[];
  graph?: GraphDoc;
}

export interface PreviewBody {
  proposal: Proposal;
  graph_index: number;
  graphs: GraphDoc[];
  graph_ids: string[];
  removed_node_ids: string[];
  added_node_ids: string[];
}

export interface ApplyBody {
  new_cost: number;
  new_cost_eur: string;
  validation: Validation;
  revision: number;
  graphs: GraphDoc[];
  graph?: GraphDoc;
}

export interface EditAccepted {
  validation: Validation;
  cost: number;
  cost_eur: string;
  revision: number;
}
