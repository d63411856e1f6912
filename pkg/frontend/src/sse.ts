/**
 * Incremental parser for text/event-stream bodies read off a fetch stream.
 *
 * Frames are separated by a blank line; only `data:` fields are used. The
 * parser is chunk-boundary safe: feed() may be called with arbitrary splits.
 */

export class SseParser {
  private buffer = ''

  /** Consume a chunk and return the JSON payloads of any completed frames. */
  feed(chunk: string): unknown[] {
    this.buffer += chunk
    const out: unknown[] = []
    let cut: number
    while ((cut = this.buffer.indexOf('\n\n')) !== -1) {
      const frame = this.buffer.slice(0, cut)
      this.buffer = this.buffer.slice(cut + 2)
      const data = frame
        .split('\n')
        .filter((line) => line.startsWith('data:'))
        .map((line) => line.slice(5).trimStart())
        .join('\n')
      if (!data) continue
      try {
        out.push(JSON.parse(data))
      } catch {
        // Malformed frame: skip rather than kill the stream.
      }
    }
    return out
  }
}

/**
 * POST a message and invoke onEvent for every streamed event.
 * Resolves when the stream ends; rejects on transport failure.
 */
export async function streamEvents(
  url: string,
  body: unknown,
  onEvent: (event: unknown) => void,
  fetchImpl: typeof fetch = fetch,
): Promise<void> {
  const response = await fetchImpl(url, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  })
  if (!response.ok) {
    const detail = await response.text()
    throw new Error(`HTTP ${response.status}: ${detail}`)
  }
  if (!response.body) throw new Error('response has no body stream')

  const reader = response.body.getReader()
  const decoder = new TextDecoder()
  const parser = new SseParser()
  for (;;) {
    const { value, done } = await reader.read()
    if (done) break
    for (const event of parser.feed(decoder.decode(value, { stream: true }))) {
      onEvent(event)
    }
  }
}
