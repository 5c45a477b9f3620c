/** Extraction of literal number tokens from raw JSON text.
 *
 * JSON.parse round-trips every float64, but re-serialising does not always
 * reproduce the server's bytes: Python writes 16.0 where JSON.stringify
 * would write 16. Numbers shown to the user are therefore lifted straight
 * out of the response text, never re-formatted from the parsed value.
 */

const NUMBER = /-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][+-]?\d+)?/y;

function isWs(ch: string): boolean {
  return ch === " " || ch === "\t" || ch === "\n" || ch === "\r";
}

/** Index just past the colon of `"key":` at top level of the text, or -1.
 *  Occurrences of the key inside string values are skipped because they
 *  are not followed by a colon. */
function valueStart(body: string, key: string): number {
  const needle = `"${key}"`;
  let from = 0;
  for (;;) {
    const at = body.indexOf(needle, from);
    if (at < 0) return -1;
    let i = at + needle.length;
    while (i < body.length && isWs(body[i])) i++;
    if (body[i] === ":") return i + 1;
    from = at + 1;
  }
}

class Scanner {
  constructor(private readonly text: string, private pos: number) {}

  private skipWs(): void {
    while (this.pos < this.text.length && isWs(this.text[this.pos])) this.pos++;
  }

  expect(ch: string): void {
    this.skipWs();
    if (this.text[this.pos] !== ch) {
      throw new Error(`expected '${ch}' at offset ${this.pos}`);
    }
    this.pos++;
  }

  tryConsume(ch: string): boolean {
    this.skipWs();
    if (this.text[this.pos] !== ch) return false;
    this.pos++;
    return true;
  }

  number(): string {
    this.skipWs();
    NUMBER.lastIndex = this.pos;
    const m = NUMBER.exec(this.text);
    if (m === null || m.index !== this.pos) {
      throw new Error(`expected number at offset ${this.pos}`);
    }
    this.pos = NUMBER.lastIndex;
    return m[0];
  }
}

/** Literal tokens of the 2-D number array stored under `key`. */
export function rawNumberMatrix(body: string, key: string): string[][] {
  const start = valueStart(body, key);
  if (start < 0) throw new Error(`key "${key}" not found`);
  const s = new Scanner(body, start);
  const rows: string[][] = [];
  s.expect("[");
  if (!s.tryConsume("]")) {
    do {
      const row: string[] = [];
      s.expect("[");
      if (!s.tryConsume("]")) {
        do {
          row.push(s.number());
        } while (s.tryConsume(","));
        s.expect("]");
      }
      rows.push(row);
    } while (s.tryConsume(","));
    s.expect("]");
  }
  return rows;
}

/** Literal token of the scalar number stored under `key`. */
export function rawNumberScalar(body: string, key: string): string {
  const start = valueStart(body, key);
  if (start < 0) throw new Error(`key "${key}" not found`);
  return new Scanner(body, start).number();
}
