// Pure HTML-string renderers. Keeping them DOM-free makes every panel
// testable without a browser; the controller swaps the strings in.

import type { ProofDoc, SessionSummary } from './types.js';
import type { ViewModel } from './viewmodel.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderBanner(vm: ViewModel): string {
  const s = vm.summary;
  const reason = s.status_reason ? ` <small>(${escapeHtml(s.status_reason)})</small>` : '';
  return (
    `<div class="banner status-${s.status}">` +
    `<strong>${escapeHtml(vm.banner)}</strong>${reason}` +
    `<div class="verdict">${escapeHtml(vm.verdict)} &middot; round ${s.round}</div>` +
    `</div>`
  );
}

function renderStateChip(name: string, highlights: Set<string>): string {
  const cls = highlights.has(name) ? 'state current' : 'state';
  return `<span class="${cls}">${escapeHtml(name)}</span>`;
}

/** One of the two side-by-side transition-system panes. */
export function renderPane(vm: ViewModel, side: 'left' | 'right'): string {
  const highlights = side === 'left' ? vm.leftHighlights : vm.rightHighlights;
  const lts = vm.summary.lts;
  const rows = lts.transitions
    .map(
      ([src, label, dst]) =>
        `<li>${renderStateChip(src, highlights)}` +
        ` <span class="label">-${escapeHtml(label)}&rarr;</span> ` +
        `${renderStateChip(dst, highlights)}</li>`,
    )
    .join('');
  const title = side === 'left' ? 'challenger side' : 'responder side';
  return `<div class="pane pane-${side}"><h3>${title}</h3><ul>${rows}</ul></div>`;
}

export function renderCurrent(vm: ViewModel): string {
  const c = vm.summary.current;
  return `<div class="current-config">at <code>${escapeHtml(c.text)}</code> (${c.owner} to move)</div>`;
}

/** Buttons for exactly the legal moves the service reported. */
export function renderMovePicker(vm: ViewModel, pending = false): string {
  const s = vm.summary;
  if (s.status !== 'in_progress') {
    return `<div class="moves"></div>`;
  }
  if (!s.humans_turn) {
    return `<div class="moves waiting">waiting for the engine&hellip;</div>`;
  }
  const disabled = pending ? ' disabled' : '';
  const buttons = s.legal_moves
    .map(
      (m) =>
        `<button data-move="${m.index}"${disabled}>` +
        `${escapeHtml(m.description)} &rarr; ${escapeHtml(m.to.text)}</button>`,
    )
    .join('');
  return `<div class="moves">${buttons}</div>`;
}

export function renderHistory(vm: ViewModel): string {
  const items = vm.summary.history
    .map(
      (h) =>
        `<li class="mover-${h.mover}"><em>${h.mover}</em>: ` +
        `${escapeHtml(h.description)} &rarr; <code>${escapeHtml(h.to.text)}</code></li>`,
    )
    .join('');
  return `<ol class="history">${items}</ol>`;
}

function renderProofNode(node: ProofDoc): string {
  if (node.kind === 'sym') {
    return (
      `<details open class="proof-node sym">` +
      `<summary><span class="badge sym-badge">sym</span> ` +
      `${escapeHtml(node.x)} # ${escapeHtml(node.y)}</summary>` +
      renderProofNode(node.child!) +
      `</details>`
    );
  }
  const challenge = `${escapeHtml(node.x)} -${escapeHtml(node.label ?? '')}&rarr; ${escapeHtml(node.x_new ?? '')}`;
  const subgoals = (node.subgoals ?? [])
    .map((sg) => {
      const answer =
        sg.y_mid !== undefined
          ? `answer (${escapeHtml(sg.y_mid)}, ${escapeHtml(sg.y_new)})` +
            `<span class="badge disjunct-badge">pick ${sg.disjunct}</span>`
          : `reply ${escapeHtml(sg.y_new)}`;
      return `<div class="subgoal">${answer}${renderProofNode(sg.proof)}</div>`;
    })
    .join('');
  const leaf = (node.subgoals ?? []).length === 0 ? `<div class="leaf">no reply: apart</div>` : subgoals;
  return (
    `<details open class="proof-node rule">` +
    `<summary>${escapeHtml(node.x)} # ${escapeHtml(node.y)} ` +
    `<span class="challenge">via ${challenge}</span></summary>` +
    leaf +
    `</details>`
  );
}

/** The final apartness proof, once the challenger has won; empty before. */
export function renderProofPanel(summary: SessionSummary): string {
  if (!summary.proof) {
    return `<div class="proof-panel empty"></div>`;
  }
  return `<div class="proof-panel"><h3>why these states differ</h3>${renderProofNode(summary.proof)}</div>`;
}

export function renderDotPanel(vm: ViewModel): string {
  return (
    `<details class="dot-panel"><summary>explored game graph (DOT)</summary>` +
    `<pre>${escapeHtml(vm.summary.dot)}</pre></details>`
  );
}

export function renderSession(vm: ViewModel, pending = false): string {
  return (
    renderBanner(vm) +
    `<div class="panes">${renderPane(vm, 'left')}${renderPane(vm, 'right')}</div>` +
    renderCurrent(vm) +
    renderMovePicker(vm, pending) +
    renderHistory(vm) +
    renderProofPanel(vm.summary) +
    renderDotPanel(vm)
  );
}
