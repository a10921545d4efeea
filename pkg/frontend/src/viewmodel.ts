import type { ConfigDoc, SessionSummary } from './types.js';

/**
 * Everything the renderers need, derived strictly from the latest server
 * response: the summary itself plus which states each of the two
 * state-graph panes should highlight. The left pane follows the
 * challenger-side states of the current configuration, the right pane the
 * responder-side ones.
 */
export interface ViewModel {
  summary: SessionSummary;
  leftHighlights: Set<string>;
  rightHighlights: Set<string>;
  banner: string;
  verdict: string;
}

function sideHighlights(config: ConfigDoc): [Set<string>, Set<string>] {
  const left = new Set<string>();
  const right = new Set<string>();
  if (config.x !== undefined) left.add(config.x);
  if (config.x_new !== undefined) left.add(config.x_new);
  if (config.y !== undefined) right.add(config.y);
  if (config.y_mid !== undefined) right.add(config.y_mid);
  if (config.y_new !== undefined) right.add(config.y_new);
  return [left, right];
}

function bannerText(s: SessionSummary): string {
  if (s.status === 'spoiler_won') return 'Spoiler wins';
  if (s.status === 'duplicator_won') return 'Duplicator wins';
  return s.humans_turn ? 'Your move' : 'Engine is thinking';
}

function verdictText(s: SessionSummary): string {
  const who = s.human_role === 'spoiler' ? 'you' : 'the engine';
  if (s.start_in_spoiler_region) {
    const rounds = s.rank !== null ? `, ${s.rank} round${s.rank === 1 ? '' : 's'} left` : '';
    return `start is winning for Spoiler (${who})${rounds}`;
  }
  return 'start is winning for Duplicator';
}

export function toViewModel(summary: SessionSummary): ViewModel {
  const [leftHighlights, rightHighlights] = sideHighlights(summary.current);
  return {
    summary,
    leftHighlights,
    rightHighlights,
    banner: bannerText(summary),
    verdict: verdictText(summary),
  };
}
