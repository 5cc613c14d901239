/** Typed client for the analysis service endpoints. */

import type { ApiErrorDoc, CellEditBody, ReportDoc, TraceDoc, WorkbookDoc } from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
    readonly cell?: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ApiErrorDoc;
  try {
    body = (await response.json()) as ApiErrorDoc;
  } catch {
    body = { error: `http_${response.status}`, detail: response.statusText };
  }
  throw new ApiError(response.status, body.error, body.detail, body.cell);
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async report(): Promise<ReportDoc> {
    return unwrap(await fetch(this.url('/api/report')));
  }

  async workbook(): Promise<WorkbookDoc> {
    return unwrap(await fetch(this.url('/api/workbook')));
  }

  async trace(address: string): Promise<TraceDoc> {
    return unwrap(await fetch(this.url(`/api/trace/${address}`)));
  }

  async putCell(address: string, body: CellEditBody): Promise<ReportDoc> {
    return unwrap(
      await fetch(this.url(`/api/cell/${address}`), {
        method: 'PUT',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(body),
      }),
    );
  }

  async putInterval(address: string, lo: number, hi: number): Promise<ReportDoc> {
    return unwrap(
      await fetch(this.url(`/api/interval/${address}`), {
        method: 'PUT',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify([lo, hi]),
      }),
    );
  }

  async deleteInterval(address: string): Promise<ReportDoc> {
    return unwrap(await fetch(this.url(`/api/interval/${address}`), { method: 'DELETE' }));
  }
}
