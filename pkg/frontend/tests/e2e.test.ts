// Scripted session against the real service: the silent-step demo system,
// human as Duplicator, playing every legal move offered. The engine must
// force its win in exactly two rounds and the proof tree must render.

import { afterAll, beforeAll, expect, test } from 'vitest';
import { spawn, type ChildProcess } from 'node:child_process';

import { SessionApi } from '../src/api.js';
import { toViewModel } from '../src/viewmodel.js';
import { renderMovePicker, renderProofPanel, renderSession } from '../src/view.js';

const PORT = 8765 + Math.floor(Math.random() * 400);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
const api = new SessionApi(BASE);

beforeAll(async () => {
  service = spawn('python3', ['-m', 'bisimgames.cli', 'serve', '--port', String(PORT)], {
    stdio: 'ignore',
  });
  for (let i = 0; i < 100; i++) {
    if (await api.health()) return;
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error('session service did not come up');
}, 30_000);

afterAll(() => {
  service?.kill();
});

test('duplicator loses the silent-system session in exactly two rounds', async () => {
  let summary = await api.createSession({
    fixture: 'silent',
    kind: 'branching',
    human_role: 'duplicator',
    start: ['x0', 'y0'],
  });

  // honest verdict up front: the engine can force the win
  expect(summary.start_in_spoiler_region).toBe(true);
  expect(summary.history[0].description).toBe('challenge x0 -tau-> x2');

  let guard = 0;
  while (summary.status === 'in_progress' && guard++ < 10) {
    expect(summary.humans_turn).toBe(true);
    expect(summary.legal_moves.length).toBeGreaterThan(0);

    // every rendered button corresponds to a move the service reported
    const picker = renderMovePicker(toViewModel(summary));
    expect(picker.match(/<button/g)).toHaveLength(summary.legal_moves.length);
    for (const move of summary.legal_moves) {
      expect(picker).toContain(`data-move="${move.index}"`);
    }

    summary = await api.playMove(summary.id, summary.legal_moves[0].index);
  }

  expect(summary.status).toBe('spoiler_won');
  expect(summary.round).toBe(2);

  // the engine's line: silent challenge, forced reply, split, final challenge
  expect(summary.history.map((h) => h.mover)).toEqual(['engine', 'human', 'engine', 'engine']);

  // the proof tree is displayed, symmetry step and disjunct badge included
  const panel = renderProofPanel(summary);
  expect(panel).toContain('x0 # y0');
  expect(panel).toContain('via x0 -tau');
  expect(panel).toContain('pick 2');
  expect(panel).toContain('sym-badge');

  const page = renderSession(toViewModel(summary));
  expect(page).toContain('Spoiler wins');
  expect(page).toContain('proof-panel');
}, 20_000);

test('spoiler-side session flags an unwinnable start', async () => {
  const summary = await api.createSession({
    fixture: 'choice',
    kind: 'strong',
    human_role: 'spoiler',
    start: ['x3', 'y2'],
  });
  expect(summary.start_in_spoiler_region).toBe(false);
  expect(summary.status).toBe('duplicator_won');
  expect(renderProofPanel(summary)).toContain('empty');
});

test('service errors surface with code and message', async () => {
  await expect(
    api.createSession({
      fixture: 'silent',
      kind: 'branching',
      human_role: 'duplicator',
      start: ['x0', 'nope'],
    }),
  ).rejects.toMatchObject({ status: 422, code: 'invalid_system' });
});
