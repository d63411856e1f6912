import { beforeEach, describe, expect, it } from 'vitest'

import { TraceView } from '../src/traceView'
import type { AgentEvent } from '../src/types'
import { TERMINAL_KINDS } from '../src/types'
import fixtureEvents from './fixtures/multimodal_events.json'

const events = fixtureEvents as AgentEvent[]

function playAll(view: TraceView): void {
  for (const event of events) view.apply(event)
}

describe('TraceView over the recorded multimodal stream', () => {
  let host: HTMLElement
  let terminals: AgentEvent[]
  let view: TraceView

  beforeEach(() => {
    host = document.createElement('div')
    document.body.textContent = ''
    document.body.appendChild(host)
    terminals = []
    view = new TraceView(host, { onTerminal: (e) => terminals.push(e) })
  })

  it('renders two assistant panels in delegation order', () => {
    playAll(view)
    const panels = view.assistantPanels
    expect(panels).toHaveLength(2)
    expect(panels.map((p) => p.dataset.agent)).toEqual([
      'MPThermoExpert',
      'MPElasticityExpert',
    ])
  })

  it('nests assistant rows under their panel', () => {
    playAll(view)
    const [thermo] = view.assistantPanels
    const rows = thermo.querySelectorAll('.step-row')
    expect(rows.length).toBeGreaterThan(2)
    for (const row of Array.from(rows)) {
      if (row.classList.contains('delegate_start') || row.classList.contains('delegate_end')) continue
      expect((row as HTMLElement).dataset.agent).toBe('MPThermoExpert')
    }
  })

  it('flags the error observation and the corrected action', () => {
    playAll(view)
    const errorRows = host.querySelectorAll('.step-row.observation.error')
    expect(errorRows).toHaveLength(1)
    const errored = errorRows[0] as HTMLElement
    expect(errored.textContent).toContain('Error on search_materials_thermo__get')

    const corrected = host.querySelectorAll('.step-row.action.corrected')
    expect(corrected).toHaveLength(1)
    expect(corrected[0].textContent).toContain('chemsys')
  })

  it('invokes the terminal callback exactly once, on final', () => {
    playAll(view)
    expect(terminals).toHaveLength(1)
    expect(terminals[0].kind).toBe('final')
    expect(host.querySelector('.terminal.final')?.textContent).toContain('SiO2')
  })

  it('renders one row per non-terminal event', () => {
    playAll(view)
    const expected = events.filter((e) => !TERMINAL_KINDS.has(e.kind)).length
    expect(view.renderedSteps).toBe(expected)
    const rows = host.querySelectorAll('.step-row')
    expect(rows).toHaveLength(expected)
  })

  it('keeps document order equal to seq order', () => {
    playAll(view)
    const seqs = Array.from(host.querySelectorAll('.step-row')).map((row) =>
      Number((row as HTMLElement).dataset.seq),
    )
    const sorted = [...seqs].sort((a, b) => a - b)
    expect(seqs).toEqual(sorted)
  })

  it('tracks the event cursor and ignores replayed duplicates', () => {
    playAll(view)
    const before = view.renderedSteps
    view.apply(events[3])
    expect(view.renderedSteps).toBe(before)
    expect(view.cursor).toBe(events[events.length - 1].seq)
  })

  it('truncates long observations with expand-on-click', () => {
    const long: AgentEvent = {
      session_id: 's',
      seq: 999,
      kind: 'observation',
      agent: 'supervisor',
      payload: { step: 0, text: 'x'.repeat(1000), error: false },
      at: 0,
    }
    view.apply(long)
    const row = host.querySelector('.step-row.observation.truncated') as HTMLElement
    expect(row).not.toBeNull()
    const pre = row.querySelector('pre') as HTMLElement
    expect(pre.textContent!.length).toBeLessThan(1000)
    ;(row.querySelector('button.expand') as HTMLButtonElement).click()
    expect(pre.textContent).toHaveLength(1000)
  })

  it('re-enables the input box when the final event arrives', () => {
    const input = document.createElement('input')
    input.disabled = true
    document.body.appendChild(input)
    const wired = new TraceView(host, {
      onTerminal: () => {
        input.disabled = false
      },
    })
    for (const event of events) {
      expect(input.disabled).toBe(true)
      wired.apply(event)
    }
    expect(input.disabled).toBe(false)
  })

  it('marks a failed delegation panel', () => {
    const start: AgentEvent = {
      session_id: 's', seq: 100, kind: 'delegate_start', agent: 'supervisor',
      payload: { assistant: 'MPThermoExpert', input: 'task' }, at: 0,
    }
    const end: AgentEvent = {
      session_id: 's', seq: 101, kind: 'delegate_end', agent: 'supervisor',
      payload: { assistant: 'MPThermoExpert', outcome: 'StepBudgetExhausted', answer: null }, at: 1,
    }
    view.apply(start)
    view.apply(end)
    const row = host.querySelector('.step-row.delegate_end') as HTMLElement
    expect(row.classList.contains('error')).toBe(true)
  })
})
