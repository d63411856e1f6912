/**
 * Incremental view over a streamed agent run.
 *
 * Each non-terminal event appends exactly one row. A delegate_start event
 * opens a collapsible assistant panel; rows from that assistant nest inside
 * it until the matching delegate_end. Error observations are badged, and the
 * next action row inside the same panel is marked as the corrected attempt.
 */

import type { AgentEvent } from './types'
import { TERMINAL_KINDS } from './types'

const OBSERVATION_PREVIEW_CHARS = 280

export interface TraceViewCallbacks {
  onTerminal?: (event: AgentEvent) => void
}

interface PanelState {
  agent: string
  rows: HTMLElement
  container: HTMLElement
  expectCorrection: boolean
}

export class TraceView {
  /** Sequence number of the last event applied to the view. */
  cursor = -1
  renderedSteps = 0
  eventsReceived = 0

  private root: PanelState
  private openPanels: PanelState[] = []

  constructor(
    private readonly host: HTMLElement,
    private readonly callbacks: TraceViewCallbacks = {},
    private readonly doc: Document = document,
  ) {
    host.textContent = ''
    const rows = this.el('div', 'trace-rows')
    host.appendChild(rows)
    this.root = { agent: '', rows, container: host, expectCorrection: false }
  }

  get assistantPanels(): HTMLElement[] {
    return Array.from(this.host.querySelectorAll('.assistant-panel'))
  }

  apply(event: AgentEvent): void {
    if (event.seq <= this.cursor) return // replayed duplicate
    this.cursor = event.seq
    this.eventsReceived += 1

    if (TERMINAL_KINDS.has(event.kind)) {
      this.renderTerminal(event)
      this.callbacks.onTerminal?.(event)
      return
    }

    switch (event.kind) {
      case 'delegate_start':
        this.openPanel(event)
        break
      case 'delegate_end':
        this.closePanel(event)
        break
      default:
        this.appendStepRow(event)
    }
  }

  /** Panel whose agent matches, else the supervisor root. */
  private target(agent: string): PanelState {
    for (let k = this.openPanels.length - 1; k >= 0; k--) {
      if (this.openPanels[k].agent === agent) return this.openPanels[k]
    }
    return this.root
  }

  private openPanel(event: AgentEvent): void {
    const assistant = String(event.payload.assistant ?? 'assistant')
    const panel = this.el('details', 'assistant-panel')
    panel.setAttribute('open', '')
    panel.dataset.agent = assistant
    const summary = this.el('summary', 'assistant-name')
    summary.textContent = assistant
    panel.appendChild(summary)

    const start = this.row('delegate_start', event)
    start.textContent = `task: ${String(event.payload.input ?? '')}`
    panel.appendChild(start)

    const rows = this.el('div', 'trace-rows')
    panel.appendChild(rows)
    this.root.rows.appendChild(panel)
    this.openPanels.push({ agent: assistant, rows, container: panel, expectCorrection: false })
    this.renderedSteps += 1
  }

  private closePanel(event: AgentEvent): void {
    const assistant = String(event.payload.assistant ?? '')
    const state = this.openPanels.pop()
    const panel = state && state.agent === assistant ? state : this.target(assistant)
    const row = this.row('delegate_end', event)
    const outcome = String(event.payload.outcome ?? '')
    row.textContent =
      outcome === 'Answered'
        ? `answer: ${String(event.payload.answer ?? '')}`
        : `ended without answer (${outcome})`
    if (outcome !== 'Answered') row.classList.add('error')
    panel.rows.appendChild(row)
    if (panel.container instanceof HTMLElement && panel.container.classList.contains('assistant-panel')) {
      panel.container.classList.add('done')
      panel.container.removeAttribute('open')
    }
    this.renderedSteps += 1
  }

  private appendStepRow(event: AgentEvent): void {
    const panel = this.target(event.agent)
    const row = this.row(event.kind, event)

    if (event.kind === 'thought') {
      row.textContent = String(event.payload.text ?? '')
    } else if (event.kind === 'action') {
      row.appendChild(this.renderAction(event))
      if (panel.expectCorrection) {
        row.classList.add('corrected')
        panel.expectCorrection = false
      }
    } else if (event.kind === 'observation') {
      this.renderObservation(row, event)
      if (event.payload.error) {
        row.classList.add('error')
        panel.expectCorrection = true
      }
    } else {
      row.textContent = JSON.stringify(event.payload)
    }

    panel.rows.appendChild(row)
    this.renderedSteps += 1
  }

  private renderAction(event: AgentEvent): HTMLElement {
    const wrap = this.el('code', 'action-body')
    const payload = { ...event.payload } as Record<string, unknown>
    delete payload.step
    wrap.textContent = JSON.stringify(payload)
    return wrap
  }

  private renderObservation(row: HTMLElement, event: AgentEvent): void {
    const full = String(event.payload.text ?? '')
    const pre = this.el('pre', 'observation-text')
    if (full.length > OBSERVATION_PREVIEW_CHARS) {
      pre.textContent = full.slice(0, OBSERVATION_PREVIEW_CHARS) + '...'
      row.classList.add('truncated')
      const expand = this.el('button', 'expand')
      expand.textContent = 'show all'
      expand.addEventListener('click', () => {
        pre.textContent = full
        expand.remove()
        row.classList.remove('truncated')
      })
      row.appendChild(pre)
      row.appendChild(expand)
    } else {
      pre.textContent = full
      row.appendChild(pre)
    }
  }

  private renderTerminal(event: AgentEvent): void {
    const row = this.el('div', `terminal ${event.kind}`)
    row.textContent =
      event.kind === 'final'
        ? String(event.payload.text ?? '')
        : `run failed: ${String(event.payload.reason ?? 'error')}`
    this.root.rows.appendChild(row)
  }

  private row(kind: string, event: AgentEvent): HTMLElement {
    const row = this.el('div', `step-row ${kind}`)
    row.dataset.kind = kind
    row.dataset.agent = event.agent
    row.dataset.seq = String(event.seq)
    const step = (event.payload as { step?: number }).step
    if (step !== undefined) row.dataset.step = String(step)
    return row
  }

  private el(tag: string, className: string): HTMLElement {
    const node = this.doc.createElement(tag)
    node.className = className
    return node
  }
}
