/**
 * View rendering: state in, HTML string out.
 *
 * Rendering is a pure function of the state so a recorded response sequence
 * replays to byte-identical markup, which the snapshot tests rely on.
 */
import type { CohortStatsView } from './api.js'
import { promptText, type TutorState } from './session.js'

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}

/**
 * Classic long-division bracket as monospaced lines.
 *
 * The quotient grows digit by digit above the dividend; each completed cycle
 * contributes its product line and the running difference (with the next
 * digit appended once the bring-down step is confirmed). Only confirmed
 * values appear, so the working never runs ahead of the student.
 */
export function bracketLines(
  dividend: number,
  divisor: number,
  stepCount: number,
  confirmed: number[],
): string[] {
  const digits = String(dividend)
  const cycleCount = (stepCount + 1) / 4
  const margin = `${divisor} ) `.length

  const placeRight = (value: number, column: number): string => {
    const text = String(value)
    return ' '.repeat(margin + column - text.length + 1) + text
  }

  const quotientCells: string[] = []
  for (let k = 0; k < cycleCount; k += 1) {
    const q = confirmed[4 * k]
    quotientCells.push(q === undefined ? ' ' : String(q))
  }
  const lines = [
    ' '.repeat(margin) + quotientCells.join(''),
    ' '.repeat(margin) + '-'.repeat(digits.length),
    `${divisor} ) ${digits}`,
  ]
  for (let k = 0; k < cycleCount; k += 1) {
    const product = confirmed[4 * k + 1]
    const difference = confirmed[4 * k + 2]
    const broughtDown = confirmed[4 * k + 3]
    if (product !== undefined) lines.push(placeRight(product, k))
    if (difference !== undefined) {
      lines.push(
        broughtDown !== undefined ? placeRight(broughtDown, k + 1) : placeRight(difference, k),
      )
    }
  }
  return lines
}

function renderProblem(state: TutorState, index: number): string {
  const problem = state.problems[index]
  const lines = bracketLines(
    problem.dividend,
    problem.divisor,
    problem.stepCount,
    state.confirmed[index],
  )
  const active = state.current !== null && state.current.problem_index === index
  return (
    `<section class="problem${active ? ' problem-active' : ''}" data-problem="${index}">` +
    `<pre class="bracket">${escapeHtml(lines.join('\n'))}</pre>` +
    `</section>`
  )
}

function renderFeedback(state: TutorState): string {
  const feedback = state.feedback
  if (feedback === null) return '<p class="feedback feedback-empty"></p>'
  if (feedback.kind === 'correct') return '<p class="feedback feedback-correct">Correct.</p>'
  return (
    `<p class="feedback feedback-retry">Not quite: expected ${feedback.expected}, ` +
    `you entered ${feedback.submitted}. Try the next step with that in mind.</p>`
  )
}

function renderScore(state: TutorState): string {
  if (state.score === null) return ''
  const score = state.score
  return (
    '<section class="score-panel">' +
    `<h2>Session mark: ${score.mark}</h2>` +
    `<p>${score.steps_correct_first_try} of ${score.steps_total} steps right on the first try` +
    ` in ${score.duration_seconds.toFixed(1)} s.</p>` +
    '</section>'
  )
}

export function renderSession(state: TutorState): string {
  const prompt = promptText(state)
  const progress = `${state.progress.answered}/${state.progress.total} steps`
  const entry =
    state.phase === 'active'
      ? '<form id="answer-form"><input id="answer" inputmode="numeric" autocomplete="off" />' +
        '<button type="submit">Check</button></form>'
      : state.phase === 'complete'
        ? '<button id="finish">Show my mark</button>'
        : ''
  return (
    `<div class="session" data-phase="${state.phase}" data-audio="${state.audioEnabled}">` +
    `<header><span class="cohort">${escapeHtml(state.cohortLabel)}</span>` +
    `<span class="progress">${progress}</span></header>` +
    state.problems.map((_, index) => renderProblem(state, index)).join('') +
    `<p class="prompt">${escapeHtml(prompt)}</p>` +
    renderFeedback(state) +
    entry +
    renderScore(state) +
    '</div>'
  )
}

/** Read-only cohort summary; the display strings come from the service verbatim. */
export function renderCohortSummary(stats: CohortStatsView): string {
  const improvement =
    stats.improvement_percent === null ? '-' : `${stats.display.improvement_percent}%`
  const rows = [
    ['students', String(stats.n)],
    ['mean mark', stats.display.mean],
    ['standard deviation', stats.display.stddev],
    ['coefficient of variation', stats.display.coeff_variation || '-'],
    [`improvement vs ${escapeHtml(stats.baseline_label)}`, improvement],
  ]
  return (
    `<table class="cohort-summary" data-label="${escapeHtml(stats.label)}">` +
    rows.map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`).join('') +
    '</table>'
  )
}

export function renderEmptyCohort(label: string, message: string): string {
  return (
    `<p class="cohort-empty">No finalized sessions yet for ` +
    `<strong>${escapeHtml(label)}</strong>. ${escapeHtml(message)}</p>`
  )
}
