/** App wiring: session lifecycle, message streaming, artifact downloads. */

import { ApiClient, isSafeFilename } from './api'
import { streamEvents } from './sse'
import { TraceView } from './traceView'
import type { AgentEvent } from './types'
import './style.css'

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node as T
}

async function boot(): Promise<void> {
  const api = new ApiClient('')
  const input = byId<HTMLInputElement>('prompt')
  const send = byId<HTMLButtonElement>('send')
  const status = byId<HTMLSpanElement>('status')
  const traceHost = byId<HTMLDivElement>('trace')
  const fileName = byId<HTMLInputElement>('file-name')
  const fileGo = byId<HTMLButtonElement>('file-go')
  const fileNote = byId<HTMLSpanElement>('file-note')

  const session = await api.createSession()
  status.textContent = `session ${session.id.slice(0, 8)} ready`
  let messageIndex = 0

  function setBusy(busy: boolean): void {
    input.disabled = busy
    send.disabled = busy
  }

  async function resumeFromTrace(view: TraceView, index: number): Promise<void> {
    status.textContent = 'connection lost, reconnecting...'
    status.className = 'reconnecting'
    for (;;) {
      try {
        const trace = await api.fetchTrace(session.id, index)
        if (trace) {
          traceHost.textContent = ''
          const finalText = trace.outcome.kind === 'answered' ? trace.outcome.text : '(no answer)'
          const done = document.createElement('div')
          done.className = 'terminal final'
          done.textContent = `recovered from trace (after seq ${view.cursor}): ${finalText}`
          traceHost.appendChild(done)
          status.className = ''
          status.textContent = 'recovered'
          return
        }
      } catch {
        // service still unreachable; keep trying
      }
      await new Promise((r) => setTimeout(r, 1000))
    }
  }

  send.addEventListener('click', async () => {
    const text = input.value.trim()
    if (!text) return
    setBusy(true)
    status.textContent = 'running...'
    const view = new TraceView(traceHost, {
      onTerminal: () => {
        setBusy(false)
        status.textContent = 'idle'
      },
    })
    const index = messageIndex
    messageIndex += 1
    try {
      await streamEvents(api.messagesUrl(session.id), { text }, (event) =>
        view.apply(event as AgentEvent),
      )
    } catch (err) {
      await resumeFromTrace(view, index)
      setBusy(false)
    }
    input.value = ''
  })

  fileGo.addEventListener('click', () => {
    const name = fileName.value.trim()
    fileNote.textContent = ''
    if (!isSafeFilename(name)) {
      fileNote.textContent = 'invalid filename'
      return
    }
    const url = api.fileUrl(session.id, name)
    if (!url) return
    fetch(url).then((r) => {
      if (!r.ok) {
        fileNote.textContent = r.status === 404 ? 'file not found' : `error ${r.status}`
        return
      }
      return r.blob().then((blob) => {
        const a = document.createElement('a')
        a.href = URL.createObjectURL(blob)
        a.download = name
        a.click()
        URL.revokeObjectURL(a.href)
      })
    })
  })
}

boot().catch((err) => {
  const status = document.getElementById('status')
  if (status) status.textContent = `failed to start: ${err}`
})
