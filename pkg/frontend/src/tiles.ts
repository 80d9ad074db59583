/**
 * Tile fetching with an in-memory cache and in-flight deduplication:
 * re-panning to a seen region must not refetch identical tile keys, and
 * a viewport change cancels whatever is still in flight.
 */

export type FetchLike = (url: string, init?: { signal?: AbortSignal }) => Promise<{
  ok: boolean;
  status: number;
  blob(): Promise<Blob>;
}>;

export class TileCache {
  private cache = new Map<string, Blob>();
  private inflight = new Map<string, Promise<Blob>>();
  private controller: AbortController | null = null;
  fetches = 0; // network requests actually issued (for tests/diagnostics)

  constructor(private fetchFn: FetchLike, private maxEntries = 256) {}

  /** Abort everything in flight (viewport changed). */
  cancelPending(): void {
    this.controller?.abort();
    this.controller = null;
    this.inflight.clear();
  }

  async get(url: string): Promise<Blob> {
    const hit = this.cache.get(url);
    if (hit) return hit;
    const pending = this.inflight.get(url);
    if (pending) return pending;

    if (!this.controller) this.controller = new AbortController();
    const signal = this.controller.signal;
    this.fetches += 1;
    const job = this.fetchFn(url, { signal }).then(async (resp) => {
      if (!resp.ok) throw new Error(`tile fetch failed: ${resp.status}`);
      const blob = await resp.blob();
      this.put(url, blob);
      return blob;
    });
    this.inflight.set(url, job);
    try {
      return await job;
    } finally {
      this.inflight.delete(url);
    }
  }

  private put(url: string, blob: Blob): void {
    if (this.cache.size >= this.maxEntries) {
      const oldest = this.cache.keys().next().value;
      if (oldest !== undefined) this.cache.delete(oldest);
    }
    this.cache.set(url, blob);
  }

  has(url: string): boolean {
    return this.cache.has(url);
  }
}
