import { SessionApi } from './api.js';
import { SessionController } from './app.js';
import type { GameKind, Role } from './types.js';

function field<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const api = new SessionApi('');
const controller = new SessionController(api, field<HTMLDivElement>('session'));

field<HTMLFormElement>('setup').addEventListener('submit', (ev) => {
  ev.preventDefault();
  void controller.start({
    fixture: field<HTMLSelectElement>('fixture').value,
    kind: field<HTMLSelectElement>('kind').value as GameKind,
    human_role: field<HTMLSelectElement>('role').value as Role,
    start: [
      field<HTMLInputElement>('state-x').value.trim(),
      field<HTMLInputElement>('state-y').value.trim(),
    ],
  });
});
