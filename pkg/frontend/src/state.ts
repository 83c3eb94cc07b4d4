// Pure view-state logic, kept out of the DOM layer so it is directly testable.

import type { MetricsResponse, TurnRecord } from "./types";

export const NO_QUESTION_PHRASE = "特にありません";
export const ITEM_COUNT = 9;

export interface Message {
  speaker: "Robot" | "Customer";
  text: string;
}

export interface ChatState {
  sessionId: string;
  state: string;
  messages: Message[];
  lastRobotTurn: TurnRecord | null;
}

export function newChatState(sessionId: string, state: string): ChatState {
  return { sessionId, state, messages: [], lastRobotTurn: null };
}

/** Append the customer line (when any) and the service-returned robot turn. */
export function applyTurn(chat: ChatState, customerText: string | null, turn: TurnRecord, state: string): ChatState {
  const messages = [...chat.messages];
  if (customerText !== null) {
    messages.push({ speaker: "Customer", text: customerText });
  }
  messages.push({ speaker: "Robot", text: turn.text });
  return { ...chat, state, messages, lastRobotTurn: turn };
}

export function isDone(chat: ChatState): boolean {
  return chat.state === "Done";
}

/** The nod indicator mirrors the latest robot turn's motion events. */
export function nodActive(turn: TurnRecord | null): boolean {
  return turn !== null && turn.motions.some((m) => m.kind === "Nod");
}

export function gazeLabel(turn: TurnRecord | null): string {
  if (turn === null) return "";
  const gaze = turn.motions.find((m) => m.kind.startsWith("Gaze"));
  switch (gaze?.kind) {
    case "GazeMonitorA":
      return "looking at monitor A";
    case "GazeMonitorB":
      return "looking at monitor B";
    case "GazeCustomer":
      return "looking at you";
    default:
      return "";
  }
}

/** Two distinct catalog picks are required before a session can start. */
export function setupValid(choiceA: string | null, choiceB: string | null): boolean {
  return choiceA !== null && choiceB !== null && choiceA !== choiceB;
}

export function clampDesire(value: number): number {
  return Math.min(100, Math.max(0, value));
}

/**
 * Null when the questionnaire is submittable, otherwise the reason it is not:
 * exactly nine answers, each an integer 1..7.
 */
export function questionnaireError(answers: Array<number | null>): string | null {
  if (answers.length !== ITEM_COUNT) {
    return `expected ${ITEM_COUNT} answers, got ${answers.length}`;
  }
  const missing = answers.filter((a) => a === null).length;
  if (missing > 0) {
    return `${missing} item${missing === 1 ? "" : "s"} still unanswered`;
  }
  for (const value of answers) {
    if (!Number.isInteger(value) || (value as number) < 1 || (value as number) > 7) {
      return `answers must be whole numbers from 1 to 7`;
    }
  }
  return null;
}

export function formatEffect(effect: number): string {
  const text = effect.toFixed(6);
  return effect >= 0 ? `+${text}` : text;
}

export function formatMetrics(metrics: MetricsResponse): string[] {
  if (metrics.count === 0 || metrics.recommendation_effect_mean === null || metrics.item_means === null) {
    return ["no rated sessions yet"];
  }
  const lines = [
    `sessions: ${metrics.count}`,
    `recommendation effect mean: ${metrics.recommendation_effect_mean.toFixed(6)}`,
  ];
  metrics.item_means.forEach((mean, index) => {
    lines.push(`${metrics.items[index] ?? `item ${index + 1}`}: ${mean.toFixed(6)}`);
  });
  return lines;
}
