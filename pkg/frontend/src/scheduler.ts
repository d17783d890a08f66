// Debounced request scheduling with stale-response discard. Each logical
// endpoint gets one scheduler: rapid parameter edits collapse into a single
// in-flight request, and a response is applied only if no newer request was
// issued meanwhile.

export class RequestScheduler<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private sequence = 0;

  constructor(
    private readonly delayMs: number,
    private readonly apply: (result: T) => void,
    private readonly onError: (err: unknown) => void = () => {},
  ) {}

  request(run: () => Promise<T>): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    const ticket = ++this.sequence;
    this.timer = setTimeout(() => {
      this.timer = null;
      run().then(
        (result) => {
          if (ticket === this.sequence) this.apply(result);
        },
        (err) => {
          if (ticket === this.sequence) this.onError(err);
        },
      );
    }, this.delayMs);
  }

  get pending(): boolean {
    return this.timer !== null;
  }
}
