/** Coalesces bursts of requests: at most one in flight, and while one is
 * running only the most recent submission is kept to run next. */

export class LatestWinsQueue<TArgs, TResult> {
  private inFlight = false;
  private pending: TArgs | null = null;
  inFlightCount = 0;
  maxObservedInFlight = 0;

  constructor(
    private readonly run: (args: TArgs) => Promise<TResult>,
    private readonly onResult: (result: TResult, args: TArgs) => void,
    private readonly onError: (error: unknown, args: TArgs) => void,
  ) {}

  submit(args: TArgs): void {
    if (this.inFlight) {
      this.pending = args;
      return;
    }
    void this.launch(args);
  }

  get busy(): boolean {
    return this.inFlight;
  }

  /** Resolves once the queue drains (useful in tests). */
  async idle(): Promise<void> {
    while (this.inFlight || this.pending !== null) {
      await new Promise((resolve) => setTimeout(resolve, 0));
    }
  }

  private async launch(args: TArgs): Promise<void> {
    this.inFlight = true;
    this.inFlightCount += 1;
    this.maxObservedInFlight = Math.max(this.maxObservedInFlight, this.inFlightCount);
    try {
      const result = await this.run(args);
      this.onResult(result, args);
    } catch (error) {
      this.onError(error, args);
    } finally {
      this.inFlightCount -= 1;
      this.inFlight = false;
      if (this.pending !== null) {
        const next = this.pending;
        this.pending = null;
        void this.launch(next);
      }
    }
  }
}
