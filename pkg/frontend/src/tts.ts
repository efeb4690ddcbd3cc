/**
 * Spoken narration for the with-voice modality.
 *
 * Uses the platform speech synthesis when available and stays silent
 * otherwise; the visual experience is identical either way.
 */

export const speechAvailable = (): boolean =>
  typeof window !== 'undefined' && 'speechSynthesis' in window

export const speak = (text: string): boolean => {
  if (!speechAvailable()) {
    return false
  }
  const utterance = new SpeechSynthesisUtterance(text)
  utterance.rate = 0.95
  utterance.pitch = 1.0
  utterance.lang = 'en-US'
  window.speechSynthesis.cancel()
  window.speechSynthesis.speak(utterance)
  return true
}

export const stopSpeaking = (): void => {
  if (speechAvailable()) {
    window.speechSynthesis.cancel()
  }
}
