/**
 * Pure session state machine.
 *
 * The browser layer feeds server responses in; every transition returns a
 * new state object and never mutates. The state only ever holds values the
 * server has already confirmed (or revealed after a wrong attempt), so the
 * client cannot leak an expected answer ahead of the student's try.
 */
import type {
  FinalizeResponse,
  SessionScore,
  SessionView,
  StepPrompt,
  SubmitResponse,
} from './api.js'

export type Phase = 'active' | 'complete' | 'finalized'

export type Feedback =
  | { kind: 'correct' }
  | { kind: 'try-again'; expected: number; submitted: number }
  | null

export interface TutorState {
  sessionId: string
  cohortLabel: string
  audioEnabled: boolean
  phase: Phase
  problems: { dividend: number; divisor: number; stepCount: number }[]
  /** confirmed step values per problem, in step order */
  confirmed: number[][]
  current: StepPrompt | null
  progress: { answered: number; total: number }
  feedback: Feedback
  score: SessionScore | null
}

export function startState(view: SessionView): TutorState {
  return {
    sessionId: view.session_id,
    cohortLabel: view.cohort_label,
    audioEnabled: view.audio_enabled,
    phase: view.state === 'finalized' ? 'finalized' : view.all_steps_answered ? 'complete' : 'active',
    problems: view.problems.map((p) => ({
      dividend: p.dividend,
      divisor: p.divisor,
      stepCount: p.step_count,
    })),
    confirmed: view.answered_values.map((values) => [...values]),
    current: view.current,
    progress: { answered: view.progress.steps_answered, total: view.progress.steps_total },
    feedback: null,
    score: view.score,
  }
}

export function applySubmit(
  state: TutorState,
  submitted: number,
  response: SubmitResponse,
): TutorState {
  if (state.current === null) return state
  const confirmed = state.confirmed.map((values) => [...values])
  let feedback: Feedback
  if (response.correct) {
    confirmed[state.current.problem_index].push(submitted)
    feedback = { kind: 'correct' }
  } else {
    feedback = { kind: 'try-again', expected: response.expected_value, submitted }
  }
  return {
    ...state,
    confirmed,
    current: response.current,
    phase: response.session_complete ? 'complete' : state.phase,
    progress: {
      answered: response.progress.steps_answered,
      total: response.progress.steps_total,
    },
    feedback,
  }
}

export function applyScore(state: TutorState, score: FinalizeResponse | SessionScore): TutorState {
  return {
    ...state,
    phase: 'finalized',
    current: null,
    score: {
      mark: score.mark,
      steps_total: score.steps_total,
      steps_correct_first_try: score.steps_correct_first_try,
      duration_seconds: score.duration_seconds,
    },
  }
}

/** Instruction text for the pending step; spoken aloud in the voice modality. */
export function promptText(state: TutorState): string {
  const step = state.current
  if (step === null) {
    return state.phase === 'finalized' ? 'Session finished.' : 'All steps done. Ready for your mark?'
  }
  const problem = state.problems[step.problem_index]
  switch (step.kind) {
    case 'divide':
      return `Divide ${step.working_value} by ${problem.divisor}: how many times?`
    case 'multiply':
      return `Multiply ${step.working_value} by ${problem.divisor}: what is the product?`
    case 'subtract': {
      const values = state.confirmed[step.problem_index]
      const product = values[values.length - 1]
      return `Subtract ${product} from ${step.working_value}: what remains?`
    }
    case 'bring_down':
      return `Bring down the next digit of ${problem.dividend}: what is the new working number?`
  }
}
