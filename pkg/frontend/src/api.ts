/** REST calls against the chat service. */

import type { SessionInfo, Trace } from './types'

export class ApiClient {
  constructor(
    readonly baseUrl: string = '',
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  async createSession(): Promise<SessionInfo> {
    const r = await this.fetchImpl(`${this.baseUrl}/api/sessions`, { method: 'POST' })
    if (!r.ok) throw new Error(`failed to create session: HTTP ${r.status}`)
    return (await r.json()) as SessionInfo
  }

  messagesUrl(sessionId: string): string {
    return `${this.baseUrl}/api/sessions/${sessionId}/messages`
  }

  async fetchTrace(sessionId: string, index: number): Promise<Trace | null> {
    const r = await this.fetchImpl(`${this.baseUrl}/api/sessions/${sessionId}/traces/${index}`)
    if (r.status === 409) return null // still running
    if (!r.ok) throw new Error(`trace fetch failed: HTTP ${r.status}`)
    return (await r.json()) as Trace
  }

  /** Null when the name is not a safe workspace-relative filename. */
  fileUrl(sessionId: string, name: string): string | null {
    if (!isSafeFilename(name)) return null
    return `${this.baseUrl}/api/sessions/${sessionId}/files/${encodeURIComponent(name)}`
  }
}

export function isSafeFilename(name: string): boolean {
  if (!name || name !== name.trim()) return false
  if (name.startsWith('/') || name.startsWith('\\')) return false
  if (name.includes('..') || name.includes('\\') || name.includes('\x00')) return false
  return true
}
