// Wire types mirroring the session service JSON. The client renders these
// verbatim; it never re-derives game state on its own.

export type GameKind = 'strong' | 'branching';
export type Role = 'spoiler' | 'duplicator';
export type Status = 'in_progress' | 'spoiler_won' | 'duplicator_won';

export interface ConfigDoc {
  index: number;
  owner: Role;
  kind: 'pair' | 'challenge' | 'quint';
  text: string;
  x?: string;
  y?: string;
  label?: string;
  x_new?: string;
  y_mid?: string;
  y_new?: string;
}

export interface MoveDoc {
  index: number;
  to: ConfigDoc;
  description: string;
}

export interface HistoryDoc {
  mover: 'human' | 'engine';
  from: ConfigDoc;
  to: ConfigDoc;
  description: string;
}

export interface LtsDoc {
  states: string[];
  labels: string[];
  tau: string | null;
  initial: number | null;
  transitions: [string, string, string][];
}

export interface ProofSubgoalDoc {
  y_new: string;
  y_mid?: string;
  disjunct?: 1 | 2;
  proof: ProofDoc;
}

export interface ProofDoc {
  kind: 'rule' | 'sym';
  x: string;
  y: string;
  label?: string;
  x_new?: string;
  subgoals?: ProofSubgoalDoc[];
  child?: ProofDoc;
}

export interface SessionSummary {
  id: string;
  kind: GameKind;
  human_role: Role;
  status: Status;
  status_reason: string;
  round: number;
  start: ConfigDoc;
  start_in_spoiler_region: boolean;
  current: ConfigDoc;
  current_in_spoiler_region: boolean;
  rank: number | null;
  humans_turn: boolean;
  legal_moves: MoveDoc[];
  history: HistoryDoc[];
  lts: LtsDoc;
  dot: string;
  proof: ProofDoc | null;
}

export interface CreateSessionRequest {
  kind: GameKind;
  human_role: Role;
  start: [string, string];
  aut?: string;
  fixture?: string;
}
