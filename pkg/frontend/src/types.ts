// Wire types mirrored from the dialogue service JSON schemas.

export type MotionKind = "Nod" | "GazeMonitorA" | "GazeMonitorB" | "GazeCustomer";
export type TurnPhase = "Speaking" | "AwaitingAnswer";

export interface MotionEvent {
  kind: MotionKind;
  phase: TurnPhase;
}

export interface Classification {
  category: string;
  stage: "Keyword" | "Wrd" | "Fallback";
  distance: number | null;
  matched: string | null;
}

export interface TurnRecord {
  speaker: "Robot" | "Customer";
  text: string;
  state: string;
  classification: Classification | null;
  motions: MotionEvent[];
  timestamp: string;
}

export interface SessionResponse {
  session_id: string;
  state: string;
  robot_turn: TurnRecord;
}

export interface RatingsResponse {
  session_id: string;
  state: string;
  recommendation_effect: number;
}

export interface TranscriptResponse {
  session_id: string;
  state: string;
  turns: TurnRecord[];
}

export interface MetricsResponse {
  count: number;
  recommendation_effect_mean: number | null;
  item_means: number[] | null;
  items: string[];
}

export interface CatalogEntry {
  id: string;
  name: string;
}

export interface CatalogResponse {
  attractions: CatalogEntry[];
}

export interface QuestionnaireResponse {
  items: string[];
}
