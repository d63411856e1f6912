/** Wire types mirrored from the chat service. */

export type EventKind =
  | 'thought'
  | 'action'
  | 'observation'
  | 'delegate_start'
  | 'delegate_end'
  | 'final'
  | 'error'

export interface AgentEvent {
  session_id: string
  seq: number
  kind: EventKind
  agent: string
  payload: Record<string, unknown>
  at: number
}

export const TERMINAL_KINDS: ReadonlySet<string> = new Set(['final', 'error'])

export interface SessionInfo {
  id: string
  created_at: number
  status: 'idle' | 'running' | 'closed'
  messages: number
}

export interface TraceStep {
  index: number
  thought: string | null
  action: Record<string, unknown> | null
  observation: string | null
  parse_error: string | null
}

export interface Trace {
  agent: string
  input: string
  outcome: { kind: string; text?: string; detail?: string }
  steps: TraceStep[]
  child_traces: Trace[]
}
