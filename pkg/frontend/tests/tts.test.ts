import { afterEach, describe, expect, test, vi } from 'vitest'

import { speak, speechAvailable, stopSpeaking } from '../src/tts.js'

afterEach(() => {
  vi.unstubAllGlobals()
})

describe('speech narration', () => {
  test('silent fallback when no speech synthesis exists', () => {
    expect(speechAvailable()).toBe(false)
    expect(speak('Divide 12 by 5: how many times?')).toBe(false)
    stopSpeaking() // must not throw either
  })

  test('speaks once per prompt and cancels the previous utterance', () => {
    const spoken: string[] = []
    const cancel = vi.fn()
    class FakeUtterance {
      rate = 1
      pitch = 1
      lang = ''
      constructor(readonly text: string) {}
    }
    vi.stubGlobal('SpeechSynthesisUtterance', FakeUtterance)
    vi.stubGlobal('window', {
      speechSynthesis: {
        cancel,
        speak: (utterance: FakeUtterance) => spoken.push(utterance.text),
      },
    })
    expect(speechAvailable()).toBe(true)
    expect(speak('Multiply 2 by 5: what is the product?')).toBe(true)
    expect(spoken).toEqual(['Multiply 2 by 5: what is the product?'])
    expect(cancel).toHaveBeenCalledTimes(1)
  })
})
