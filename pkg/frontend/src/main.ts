/**
 * Browser bootstrap: wires the start form, the answer box, and the cohort
 * summary panel to the service. One in-flight submission at a time; network
 * failures keep the student's input and offer a retry.
 */
import { ApiError, TutorApi, type Cursor } from './api.js'
import { applyScore, applySubmit, promptText, startState, type TutorState } from './session.js'
import { renderCohortSummary, renderEmptyCohort, renderSession } from './render.js'
import { speak } from './tts.js'

declare global {
  interface Window {
    TUTORKIT_BASE_URL?: string
  }
}

const api = new TutorApi(window.TUTORKIT_BASE_URL ?? '')

let state: TutorState | null = null
let submitting = false
let pendingValue = ''

const appRoot = (): HTMLElement => document.getElementById('app') as HTMLElement
const statusLine = (): HTMLElement => document.getElementById('status') as HTMLElement

function setStatus(text: string): void {
  statusLine().textContent = text
}

function narrate(previousPrompt: string | null): void {
  if (state === null || !state.audioEnabled) return
  const prompt = promptText(state)
  if (prompt !== previousPrompt) {
    speak(prompt)
  }
}

function draw(): void {
  if (state === null) return
  appRoot().innerHTML = renderSession(state)
  const form = document.getElementById('answer-form') as HTMLFormElement | null
  const input = document.getElementById('answer') as HTMLInputElement | null
  if (form !== null && input !== null) {
    input.value = pendingValue
    input.focus()
    form.addEventListener('submit', (event) => {
      event.preventDefault()
      void submitAnswer(input.value)
    })
  }
  const finish = document.getElementById('finish')
  if (finish !== null) {
    finish.addEventListener('click', () => void finalize())
  }
}

async function submitAnswer(raw: string): Promise<void> {
  if (state === null || state.current === null || submitting) return
  const value = Number.parseInt(raw.trim(), 10)
  if (!Number.isFinite(value)) {
    setStatus('Enter a whole number first.')
    return
  }
  const cursor: Cursor = {
    problem_index: state.current.problem_index,
    step_index: state.current.step_index,
  }
  submitting = true
  pendingValue = raw
  try {
    const before = promptText(state)
    const response = await api.submitStep(state.sessionId, cursor, value)
    state = applySubmit(state, value, response)
    pendingValue = ''
    setStatus('')
    draw()
    narrate(before)
    if (state.phase === 'complete') {
      await finalize()
    }
  } catch (error) {
    if (error instanceof ApiError) {
      setStatus(`${error.code}: ${error.message}`)
    } else {
      setStatus('Network hiccup; your answer is still in the box, press Check to retry.')
    }
  } finally {
    submitting = false
  }
}

async function finalize(): Promise<void> {
  if (state === null) return
  try {
    const score = await api.finalizeSession(state.sessionId)
    state = applyScore(state, score)
    draw()
    if (state.audioEnabled) {
      speak(`All done. Your mark is ${score.mark}.`)
    }
  } catch (error) {
    setStatus(error instanceof ApiError ? error.message : 'Could not fetch the mark; retry.')
  }
}

async function startPractice(event: Event): Promise<void> {
  event.preventDefault()
  const audio = (document.getElementById('audio-toggle') as HTMLInputElement).checked
  const digits = Number((document.getElementById('digits') as HTMLInputElement).value)
  const divisorDigits = Number((document.getElementById('divisor-digits') as HTMLInputElement).value)
  const count = Number((document.getElementById('count') as HTMLInputElement).value)
  if (!(count >= 1) || !(divisorDigits >= 1) || !(digits >= divisorDigits)) {
    setStatus('Problem shape must satisfy: count >= 1 and dividend digits >= divisor digits >= 1.')
    return
  }
  setStatus('Starting…')
  try {
    const view = await api.createSession({
      cohort_label: audio ? 'cal-voice' : 'cal-novoice',
      audio_enabled: audio,
      problem_spec: { count, dividend_digits: digits, divisor_digits: divisorDigits },
    })
    state = startState(view)
    pendingValue = ''
    window.location.hash = `session=${view.session_id}`
    setStatus('')
    draw()
    narrate(null)
  } catch (error) {
    setStatus(
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : 'Service unreachable; check the server and try again.',
    )
  }
}

async function showCohort(event: Event): Promise<void> {
  event.preventDefault()
  const label = (document.getElementById('cohort-label') as HTMLInputElement).value.trim()
  const panel = document.getElementById('cohort-panel') as HTMLElement
  if (!label) return
  try {
    const stats = await api.cohortStats(label)
    panel.innerHTML = renderCohortSummary(stats)
  } catch (error) {
    if (error instanceof ApiError && error.code === 'empty_cohort') {
      panel.innerHTML = renderEmptyCohort(label, 'Finish a session in this cohort first.')
    } else {
      panel.innerHTML = renderEmptyCohort(label, 'Could not reach the service.')
    }
  }
}

async function resumeFromHash(): Promise<void> {
  const match = window.location.hash.match(/^#session=(\w+)$/)
  if (match === null) return
  try {
    state = startState(await api.getSession(match[1]))
    draw()
  } catch {
    setStatus('Previous session not found; start a new one.')
  }
}

export function boot(): void {
  const startForm = document.getElementById('start-form')
  const cohortForm = document.getElementById('cohort-form')
  if (startForm !== null) startForm.addEventListener('submit', (e) => void startPractice(e))
  if (cohortForm !== null) cohortForm.addEventListener('submit', (e) => void showCohort(e))
  void resumeFromHash()
}

if (typeof document !== 'undefined') {
  boot()
}
