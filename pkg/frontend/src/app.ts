/** Controller: wires the grid, formula bar, side panel and trace panel to the
 * service.  The UI is a pure view over server state -- every change of
 * anything goes through the API and lands back here as a fresh report.
 */

import { ApiClient, ApiError } from './api.js';
import {
  type GridViewModel,
  type TraceHighlight,
  buildGrid,
  intervalInputError,
  traceHighlight,
} from './model.js';
import { renderGrid, renderSidePanel, renderTraceSteps, escapeHtml } from './render.js';
import type { CellEditBody, ReportDoc } from './types.js';

export interface AppElements {
  grid: HTMLElement;
  formulaBar: HTMLInputElement;
  selectionLabel: HTMLElement;
  sidePanel: HTMLElement;
  tracePanel: HTMLElement;
  banner: HTMLElement;
  revisionLabel: HTMLElement;
}

export class App {
  private vm: GridViewModel | null = null;
  private selected: string | null = null;
  private highlight: TraceHighlight | null = null;
  private traceStepsHtml = '';
  private mutationInFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly el: AppElements,
  ) {
    el.grid.addEventListener('click', (event) => {
      const target = (event.target as HTMLElement).closest('[data-address]');
      if (target) {
        this.select(target.getAttribute('data-address')!);
      }
    });
    el.formulaBar.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter') {
        event.preventDefault();
        void this.submitFormulaBar();
      }
    });
    el.sidePanel.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.submitInterval();
    });
    el.sidePanel.addEventListener('click', (event) => {
      const id = (event.target as HTMLElement).id;
      if (id === 'interval-delete') {
        void this.detachInterval();
      } else if (id === 'trace-button') {
        void this.requestTrace();
      }
    });
  }

  async start(): Promise<void> {
    await this.refreshGrid();
  }

  /** Fetch the latest report; stale responses are dropped by revision. */
  async refreshGrid(): Promise<void> {
    try {
      this.applyReport(await this.api.report());
      this.el.banner.textContent = '';
    } catch (error) {
      // connection failure: keep the stale grid, surface a banner
      this.el.banner.textContent = `service unreachable: ${String(error)}`;
    }
  }

  private applyReport(report: ReportDoc): void {
    const vm = buildGrid(report);
    if (this.vm && vm.revision < this.vm.revision) {
      return; // stale response from an out-of-order fetch
    }
    this.vm = vm;
    this.render();
  }

  private render(): void {
    if (!this.vm) {
      return;
    }
    this.el.grid.innerHTML = renderGrid(this.vm, this.selected, this.highlight);
    this.el.revisionLabel.textContent = `revision ${this.vm.revision}`;
    const selectedView = this.selected ? this.vm.cells.get(this.selected) ?? null : null;
    this.el.selectionLabel.textContent = this.selected ?? '';
    this.el.formulaBar.value =
      selectedView?.formula ?? (selectedView?.value !== null && selectedView !== null ? String(selectedView.value) : '');
    this.el.sidePanel.innerHTML = renderSidePanel(selectedView);
    this.el.tracePanel.innerHTML = this.traceStepsHtml;
    if (this.vm.graphError) {
      this.el.banner.textContent = `circular reference: ${this.vm.graphError.join(' → ')}`;
    }
  }

  select(address: string): void {
    this.selected = address;
    this.render();
  }

  /** Trace from the selected cell; a no-symptom answer becomes an inline
   * notice and leaves the current highlight untouched. */
  async requestTrace(): Promise<void> {
    if (!this.selected) {
      return;
    }
    try {
      const trace = await this.api.trace(this.selected);
      this.highlight = traceHighlight(trace);
      this.traceStepsHtml = renderTraceSteps(trace.steps, trace.tie_broken);
      this.render();
    } catch (error) {
      if (error instanceof ApiError && error.code === 'query_not_faulty') {
        this.notice(`${this.selected} has no symptom of fault`);
        return;
      }
      this.notice(String(error));
    }
  }

  clearTrace(): void {
    this.highlight = null;
    this.traceStepsHtml = '';
    this.render();
  }

  private notice(text: string): void {
    const slot = this.el.sidePanel.querySelector('#interval-error');
    if (slot) {
      slot.textContent = text;
    } else {
      this.el.banner.textContent = text;
    }
  }

  async submitFormulaBar(): Promise<void> {
    if (!this.selected) {
      return;
    }
    const raw = this.el.formulaBar.value.trim();
    let body: CellEditBody;
    if (raw === '') {
      body = { clear: true };
    } else if (raw.startsWith('=')) {
      body = { formula: raw };
    } else if (Number.isFinite(Number(raw))) {
      body = { number: Number(raw) };
    } else {
      body = { text: raw };
    }
    await this.editCell(this.selected, body);
  }

  /** One mutation at a time; the report in the response becomes the grid. */
  async editCell(address: string, body: CellEditBody): Promise<void> {
    if (this.mutationInFlight) {
      return;
    }
    this.mutationInFlight = true;
    try {
      this.applyReport(await this.api.putCell(address, body));
      this.el.banner.textContent = '';
    } catch (error) {
      this.notice(error instanceof ApiError ? error.detail : String(error));
    } finally {
      this.mutationInFlight = false;
    }
  }

  async submitInterval(): Promise<void> {
    if (!this.selected || !this.vm) {
      return;
    }
    const lo = (this.el.sidePanel.querySelector('#interval-lo') as HTMLInputElement).value;
    const hi = (this.el.sidePanel.querySelector('#interval-hi') as HTMLInputElement).value;
    const problem = intervalInputError(lo, hi);
    if (problem) {
      // rejected client-side: no request is sent
      this.notice(problem);
      return;
    }
    if (this.mutationInFlight) {
      return;
    }
    this.mutationInFlight = true;
    try {
      this.applyReport(await this.api.putInterval(this.selected, Number(lo), Number(hi)));
    } catch (error) {
      this.notice(error instanceof ApiError ? error.detail : String(error));
    } finally {
      this.mutationInFlight = false;
    }
  }

  async detachInterval(): Promise<void> {
    if (!this.selected || this.mutationInFlight) {
      return;
    }
    this.mutationInFlight = true;
    try {
      this.applyReport(await this.api.deleteInterval(this.selected));
    } catch (error) {
      this.notice(error instanceof ApiError ? error.detail : String(error));
    } finally {
      this.mutationInFlight = false;
    }
  }

  get viewModel(): GridViewModel | null {
    return this.vm;
  }

  get activeHighlight(): TraceHighlight | null {
    return this.highlight;
  }
}

export function mountApp(root: Document, api: ApiClient): App {
  const byId = (id: string) => {
    const node = root.getElementById(id);
    if (!node) {
      throw new Error(`missing element #${id}`);
    }
    return node;
  };
  const app = new App(api, {
    grid: byId('grid'),
    formulaBar: byId('formula-bar') as HTMLInputElement,
    selectionLabel: byId('selection-label'),
    sidePanel: byId('side-panel'),
    tracePanel: byId('trace-panel'),
    banner: byId('banner'),
    revisionLabel: byId('revision-label'),
  });
  return app;
}

export { escapeHtml };
