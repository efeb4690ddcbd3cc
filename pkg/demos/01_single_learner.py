"""Train one learner against one stimulus and watch the error fall.

The learner starts with a zero weight, so its first output is 0 while the
target sits at 0.9. Under the supervised rule each iteration nudges the
weight along the signed error; the printed trajectory is the |error| per
iteration until it enters the 0.05 tolerance band.
"""
from tutorkit.neuron import LearnerState, Paradigm, Stimulus, train_episode

stimulus = Stimulus([1.0], desired=0.9)

print("supervised (delta rule), learning_rate=0.5")
learner = LearnerState([0.0], learning_rate=0.5)
outcome = train_episode(learner, stimulus)
for n, err in enumerate(outcome.error_trajectory):
    print(f"  n={n:3d}  |error|={err:.6f}")
print(f"converged at n={outcome.converged_at}, final weight={outcome.final_state.weights[0]:.6f}")

print()
print("unsupervised (hebbian rule), learning_rate=0.5, starting weight 0.5")
learner = LearnerState([0.5], learning_rate=0.5)
outcome = train_episode(learner, stimulus, paradigm=Paradigm.UNSUPERVISED, max_iterations=60)
print(f"iterations recorded: {len(outcome.error_trajectory)}")
print(f"converged at n={outcome.converged_at}")
print("the output self-reinforces toward saturation, passing the target band on its way")
