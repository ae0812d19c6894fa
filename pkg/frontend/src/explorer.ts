/** Knowledge explorer: browse the docs tree through served links only,
 * with breadcrumb history and a free-form query tester. */

import type { ConsoleApi } from "./api.js";
import { ApiError } from "./api.js";
import type { KnowledgeDoc } from "./types.js";

export interface DocView {
  path: string;
  title: string;
  explanation: string;
  snippet: string | null;
  signature: string | null;
  livePath: string | null;
  related: { kind: string; path: string }[];
}

function toView(doc: KnowledgeDoc): DocView {
  return {
    path: doc.path,
    title: doc.title,
    explanation: doc.explanation,
    snippet: doc.source_snippet ?? null,
    signature: doc.signature ?? null,
    livePath: doc.live_path ?? null,
    related: doc.related,
  };
}

export class KnowledgeExplorer {
  current: DocView | null = null;
  readonly breadcrumbs: string[] = [];

  constructor(private readonly api: ConsoleApi) {}

  async open(path: string): Promise<DocView> {
    const doc = await this.api.doc(path);
    this.current = toView(doc);
    if (this.breadcrumbs[this.breadcrumbs.length - 1] !== path) {
      this.breadcrumbs.push(path);
    }
    return this.current;
  }

  /** Follow a related link shown on the current doc. */
  async click(index: number): Promise<DocView> {
    if (!this.current) throw new Error("no document open");
    const link = this.current.related[index];
    if (!link) throw new Error(`no related link at index ${index}`);
    return this.open(link.path);
  }

  async back(): Promise<DocView | null> {
    if (this.breadcrumbs.length <= 1) return this.current;
    this.breadcrumbs.pop();
    const previous = this.breadcrumbs[this.breadcrumbs.length - 1]!;
    const doc = await this.api.doc(previous);
    this.current = toView(doc);
    return this.current;
  }

  /** Issue an arbitrary GET and pretty-print the body (or the error). */
  async queryTester(path: string): Promise<string> {
    try {
      const payload = await this.api.get<unknown>(path);
      return JSON.stringify(payload, null, 2);
    } catch (err) {
      if (err instanceof ApiError) {
        return JSON.stringify({ code: err.code, message: err.message, path: err.path }, null, 2);
      }
      throw err;
    }
  }
}
