/**
 * Typed client for the tutoring session service.
 *
 * Every call maps 1:1 onto a service endpoint; non-2xx responses carry a
 * JSON body {code, message} which surfaces here as ApiError.
 */

export type StepKind = 'divide' | 'multiply' | 'subtract' | 'bring_down'

export interface Cursor {
  problem_index: number
  step_index: number
}

export interface StepPrompt extends Cursor {
  kind: StepKind
  working_value: number
}

export interface ProblemView {
  dividend: number
  divisor: number
  step_count: number
}

export interface Progress {
  steps_total: number
  steps_answered: number
}

export interface SessionScore {
  mark: number
  steps_total: number
  steps_correct_first_try: number
  duration_seconds: number
}

export interface SessionView {
  session_id: string
  cohort_label: string
  audio_enabled: boolean
  student_id: string
  state: 'active' | 'finalized'
  started_at: string
  finalized_at: string | null
  problems: ProblemView[]
  progress: Progress
  all_steps_answered: boolean
  /** per problem, values of steps already passed; rebuilds the working on reload */
  answered_values: number[][]
  current: StepPrompt | null
  score: SessionScore | null
}

export interface SubmitResponse {
  correct: boolean
  expected_value: number
  session_complete: boolean
  cursor: Cursor | null
  current: StepPrompt | null
  progress: Progress
}

export interface FinalizeResponse extends SessionScore {
  session_id: string
  cohort_label: string
  finalized_at: string
}

export interface CohortStatsView {
  label: string
  baseline_label: string
  n: number
  mean: number
  variance: number
  stddev: number
  coeff_variation: number | null
  improvement_percent: number | null
  display: Record<string, string>
}

export interface ProblemSpec {
  count: number
  dividend_digits: number
  divisor_digits: number
}

export interface CreateSessionRequest {
  cohort_label: string
  audio_enabled: boolean
  student_id?: string
  problem_spec?: ProblemSpec
  problems?: { dividend: number; divisor: number }[]
  seed?: number
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message)
    this.name = 'ApiError'
  }
}

export class TutorApi {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init)
    if (!response.ok) {
      let code = 'http_error'
      let message = `HTTP ${response.status}`
      try {
        const body = (await response.json()) as { code?: string; message?: string }
        if (body.code) code = body.code
        if (body.message) message = body.message
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, code, message)
    }
    return (await response.json()) as T
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    })
  }

  createSession(body: CreateSessionRequest): Promise<SessionView> {
    return this.post('/sessions', body)
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request(`/sessions/${sessionId}`)
  }

  submitStep(sessionId: string, cursor: Cursor, value: number): Promise<SubmitResponse> {
    return this.post(`/sessions/${sessionId}/steps`, { value, cursor })
  }

  finalizeSession(sessionId: string): Promise<FinalizeResponse> {
    return this.request(`/sessions/${sessionId}/finalize`, { method: 'POST' })
  }

  cohortStats(label: string): Promise<CohortStatsView> {
    return this.request(`/cohorts/${encodeURIComponent(label)}/stats`)
  }
}
