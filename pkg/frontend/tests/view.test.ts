import { describe, expect, test } from 'vitest';

import type { ProofDoc, SessionSummary } from '../src/types.js';
import { toViewModel } from '../src/viewmodel.js';
import {
  renderBanner,
  renderHistory,
  renderMovePicker,
  renderPane,
  renderProofPanel,
  renderSession,
} from '../src/view.js';

const proof: ProofDoc = {
  kind: 'rule',
  x: 'x0',
  y: 'y0',
  label: 'tau',
  x_new: 'x2',
  subgoals: [
    {
      y_new: 'y0',
      y_mid: 'y0',
      disjunct: 2,
      proof: {
        kind: 'sym',
        x: 'x2',
        y: 'y0',
        child: { kind: 'rule', x: 'y0', y: 'x2', label: 'a', x_new: 'y1', subgoals: [] },
      },
    },
  ],
};

function summary(overrides: Partial<SessionSummary> = {}): SessionSummary {
  return {
    id: 'abc',
    kind: 'branching',
    human_role: 'duplicator',
    status: 'in_progress',
    status_reason: '',
    round: 1,
    start: { index: 0, owner: 'spoiler', kind: 'pair', text: '[x0,y0]', x: 'x0', y: 'y0' },
    start_in_spoiler_region: true,
    current: {
      index: 2,
      owner: 'duplicator',
      kind: 'challenge',
      text: '<x0,tau,x2,y0>',
      x: 'x0',
      label: 'tau',
      x_new: 'x2',
      y: 'y0',
    },
    current_in_spoiler_region: true,
    rank: 1,
    humans_turn: true,
    legal_moves: [
      {
        index: 0,
        to: { index: 5, owner: 'spoiler', kind: 'quint', text: '[x0,x2,y0,y0,y0]' },
        description: 'reply y0 =tau=> y0 -(tau)-> y0',
      },
    ],
    history: [
      {
        mover: 'engine',
        from: { index: 0, owner: 'spoiler', kind: 'pair', text: '[x0,y0]' },
        to: { index: 2, owner: 'duplicator', kind: 'challenge', text: '<x0,tau,x2,y0>' },
        description: 'challenge x0 -tau-> x2',
      },
    ],
    lts: {
      states: ['x0', 'x1', 'x2', 'x3', 'y0', 'y1', 'y2'],
      labels: ['a', 'b', 'tau'],
      tau: 'tau',
      initial: 0,
      transitions: [
        ['x0', 'a', 'x1'],
        ['x0', 'tau', 'x2'],
        ['x2', 'b', 'x3'],
        ['y0', 'a', 'y1'],
        ['y0', 'b', 'y2'],
      ],
    },
    dot: 'digraph game {\n}\n',
    proof: null,
    ...overrides,
  };
}

describe('move picker', () => {
  test('one button per legal move, carrying the move index', () => {
    const html = renderMovePicker(toViewModel(summary()));
    expect(html.match(/<button/g)).toHaveLength(1);
    expect(html).toContain('data-move="0"');
    expect(html).toContain('reply y0 =tau=&gt; y0 -(tau)-&gt; y0');
  });

  test('buttons disabled while a move is pending', () => {
    const html = renderMovePicker(toViewModel(summary()), true);
    expect(html).toContain('disabled');
  });

  test('no buttons when the game is over', () => {
    const html = renderMovePicker(
      toViewModel(summary({ status: 'spoiler_won', humans_turn: false, legal_moves: [] })),
    );
    expect(html).not.toContain('<button');
  });

  test('waiting notice when it is the engine turn', () => {
    const html = renderMovePicker(
      toViewModel(summary({ humans_turn: false, legal_moves: [] })),
    );
    expect(html).toContain('waiting');
  });
});

describe('banner', () => {
  test('announces the winner', () => {
    const html = renderBanner(
      toViewModel(summary({ status: 'spoiler_won', status_reason: 'the mimic has no reply' })),
    );
    expect(html).toContain('Spoiler wins');
    expect(html).toContain('the mimic has no reply');
  });

  test('honest verdict about the start pair', () => {
    const html = renderBanner(toViewModel(summary()));
    expect(html).toContain('winning for Spoiler');
  });
});

describe('panes', () => {
  test('left pane highlights challenger-side states of the current config', () => {
    const vm = toViewModel(summary());
    const left = renderPane(vm, 'left');
    expect(left).toContain('class="state current">x0<');
    expect(left).toContain('class="state current">x2<');
    const right = renderPane(vm, 'right');
    expect(right).toContain('class="state current">y0<');
    expect(right).not.toContain('class="state current">x0<');
  });

  test('panes list every transition', () => {
    const html = renderPane(toViewModel(summary()), 'left');
    expect(html.match(/<li>/g)).toHaveLength(5);
  });
});

describe('history', () => {
  test('replays mover and description', () => {
    const html = renderHistory(toViewModel(summary()));
    expect(html).toContain('engine');
    expect(html).toContain('challenge x0 -tau-&gt; x2');
  });
});

describe('proof panel', () => {
  test('empty before the game concludes', () => {
    expect(renderProofPanel(summary())).toContain('empty');
  });

  test('renders the tree with symmetry and disjunct badges', () => {
    const html = renderProofPanel(summary({ status: 'spoiler_won', proof }));
    expect(html).toContain('x0 # y0');
    expect(html).toContain('sym-badge');
    expect(html).toContain('pick 2');
    expect(html).toContain('no reply: apart');
  });
});

describe('full session render', () => {
  test('composes every panel', () => {
    const html = renderSession(toViewModel(summary()));
    for (const fragment of ['banner', 'pane-left', 'pane-right', 'moves', 'history', 'dot-panel']) {
      expect(html).toContain(fragment);
    }
  });
});
