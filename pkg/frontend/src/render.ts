/** Pure HTML renderers; the controller assigns the strings to containers. */

import type { TraceStepDoc } from './types.js';
import {
  type CellView,
  type GridViewModel,
  type TraceHighlight,
  columnLetters,
  formatAddress,
  formatInterval,
  reasonLabel,
} from './model.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function cellClasses(
  view: CellView | undefined,
  address: string,
  selected: string | null,
  highlight: TraceHighlight | null,
): string {
  const classes = ['cell', `cell-${view?.color ?? 'neutral'}`];
  if (selected === address) {
    classes.push('selected');
  }
  if (highlight) {
    if (highlight.terminal === address) {
      classes.push('trace-terminal');
    } else if (highlight.path.includes(address)) {
      classes.push('trace-path');
    }
  }
  return classes.join(' ');
}

function cellTitle(view: CellView | undefined): string {
  if (!view) {
    return '';
  }
  const parts: string[] = [];
  if (view.reasons.length) {
    parts.push(view.reasons.map(reasonLabel).join('; '));
  }
  if (view.error) {
    parts.push(view.error);
  }
  return parts.join(' | ');
}

export function renderGrid(
  vm: GridViewModel,
  selected: string | null,
  highlight: TraceHighlight | null,
): string {
  const header = Array.from(
    { length: vm.cols },
    (_, i) => `<th>${columnLetters(i + 1)}</th>`,
  ).join('');
  const rows: string[] = [];
  for (let row = 1; row <= vm.rows; row += 1) {
    const tds: string[] = [`<th>${row}</th>`];
    for (let col = 1; col <= vm.cols; col += 1) {
      const address = formatAddress(col, row);
      const view = vm.cells.get(address);
      tds.push(
        `<td class="${cellClasses(view, address, selected, highlight)}" ` +
          `data-address="${address}" title="${escapeHtml(cellTitle(view))}">` +
          `${escapeHtml(view?.display ?? '')}</td>`,
      );
    }
    rows.push(`<tr>${tds.join('')}</tr>`);
  }
  return `<table class="grid"><thead><tr><th></th>${header}</tr></thead><tbody>${rows.join(
    '',
  )}</tbody></table>`;
}

export function renderSidePanel(view: CellView | null): string {
  if (!view) {
    return '<p class="hint">Select a cell to inspect it.</p>';
  }
  const rows: string[] = [
    `<h2>${view.address}</h2>`,
    `<dl>`,
    `<dt>Status</dt><dd class="status-${view.color}">${view.status}</dd>`,
  ];
  if (view.reasons.length) {
    const items = view.reasons
      .map((reason) => `<li>${escapeHtml(reasonLabel(reason))}</li>`)
      .join('');
    rows.push(`<dt>Reasons</dt><dd><ul class="reasons">${items}</ul></dd>`);
  }
  if (view.value !== null) {
    rows.push(`<dt>Value</dt><dd>${escapeHtml(String(view.value))}</dd>`);
  }
  if (view.bounding) {
    rows.push(`<dt>Bounding</dt><dd class="bounding">${formatInterval(view.bounding)}</dd>`);
  }
  if (view.error) {
    rows.push(`<dt>Error</dt><dd class="cell-error">${escapeHtml(view.error)}</dd>`);
  }
  rows.push('</dl>');
  const lo = view.expected ? String(view.expected[0]) : '';
  const hi = view.expected ? String(view.expected[1]) : '';
  rows.push(
    `<form id="interval-form">
      <label>Expected interval</label>
      <input id="interval-lo" inputmode="decimal" placeholder="lo" value="${escapeHtml(lo)}">
      <input id="interval-hi" inputmode="decimal" placeholder="hi" value="${escapeHtml(hi)}">
      <button type="submit">Attach</button>
      <button type="button" id="interval-delete" ${view.expected ? '' : 'disabled'}>Detach</button>
      <span id="interval-error" class="inline-error"></span>
    </form>`,
  );
  if (view.color === 'red') {
    rows.push(`<button id="trace-button">Trace most influential faulty cell</button>`);
  }
  return rows.join('');
}

const STEP_EXPLANATIONS: Record<number, string> = {
  2: 'no faulty precedents: this is the most influential faulty cell',
  5: 'single candidate leads on faulty precedents',
  8: 'single candidate leads on faulty dependents',
  9: 'tie broken by row-major order',
};

function mapList(map: Record<string, string[]>): string {
  const entries = Object.entries(map);
  if (!entries.length) {
    return '<em>not computed</em>';
  }
  return entries
    .map(([cell, refs]) => `${cell}: {${refs.join(', ')}}`)
    .join('; ');
}

export function renderTraceSteps(steps: TraceStepDoc[], tieBroken: boolean): string {
  const items = steps
    .map((step, index) => {
      const parts = [
        `<li class="trace-step" data-step-index="${index}">`,
        `<strong>${step.current}</strong>`,
        `<div>faulty precedents: {${step.faulty_precedents.join(', ')}}</div>`,
        `<div>their faulty precedents: ${mapList(step.faulty_precedents_of)}</div>`,
      ];
      if (Object.keys(step.faulty_dependents_of).length) {
        parts.push(`<div>faulty dependents: ${mapList(step.faulty_dependents_of)}</div>`);
      }
      parts.push(
        `<div class="step-outcome">${STEP_EXPLANATIONS[step.resolved_step] ?? ''}` +
          `${step.next ? ` &rarr; ${step.next}` : ''}</div>`,
        '</li>',
      );
      return parts.join('');
    })
    .join('');
  const badge = tieBroken ? '<span class="tie-badge">tie broken</span>' : '';
  return `${badge}<ol class="trace-steps">${items}</ol>`;
}
