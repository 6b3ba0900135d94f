"""
Sample curation and metric evaluation
=====================================

Shows the RL-side of the toolkit: reweighting a sampled group so stable
correct answers and unstable incorrect answers dominate the gradient, then
measuring how well the instability score separates right from wrong.
"""

from entrodyn import (
    ConfidenceKind,
    Direction,
    GroupBatch,
    GroupMember,
    LabeledScoreSet,
    cohens_d,
    generate_pool_corpus,
    grpo_advantage,
    retention_accuracy,
    roc_auc,
    score_response,
    sequence_filter,
    sequence_weights,
)

# One prompt's sampled group: four answers, mixed correctness, with the
# instability score already computed for each. target_n is how many members
# the hard filter below will keep.
batch = GroupBatch(
    prompt_id="demo-prompt",
    members=(
        GroupMember("r0", edis=0.4, correct=True, reward=1.0),
        GroupMember("r1", edis=5.1, correct=True, reward=1.0),
        GroupMember("r2", edis=0.3, correct=False, reward=0.0),
        GroupMember("r3", edis=6.0, correct=False, reward=0.0),
    ),
    target_n=2,
)

# Plain GRPO standardizes rewards within the group: mean 0, unit variance.
print("grpo advantages:", [round(a, 4) for a in grpo_advantage([1, 1, 0, 0])])

# Sequence weighting goes further: z-score log(1 + edis) within the group,
# flip the sign for correct members (stability is good when you are right,
# suspicious when you are wrong), softmax, then renormalize so each
# correctness class keeps its total mass.
weights = sequence_weights(batch, alpha=1.8)
for member in weights.members:
    print(
        f"  {member.response_id}: z={member.z:+.3f}"
        f" norm_w={member.norm_w:.3f}"
        f" weighted_adv={member.weighted_advantage:+.3f}"
    )

# The hard filter keeps the most useful members instead of reweighting:
# calm correct answers and wild incorrect answers, alternating.
print("kept by filter:", sequence_filter(batch))

# Evaluation: does the score actually separate correct from incorrect?
records = generate_pool_corpus(
    pools=10, pool_size=30, correct_rate=0.5, noise_scale=0.2, seed=99
)
scored = [score_response(r) for r in records]
items = tuple(
    (s.score_for(ConfidenceKind.EDIS).value, s.response.correct)
    for s in scored
)
labeled = LabeledScoreSet(items=items, direction=Direction.LOWER_IS_CONFIDENT)

# AUC of 1.0 would be perfect ranking; 0.5 is a coin flip.
print("roc auc:", round(roc_auc(labeled), 4))

# Keep only the most confident fraction q and re-measure accuracy: a good
# confidence signal makes the retained slice cleaner than the full set.
for fraction, accuracy in retention_accuracy(labeled, [0.1, 0.25, 0.5, 1.0]):
    print(f"  keep {fraction:4.2f} -> accuracy {accuracy:.3f}")

# Effect size between the two score populations: cohens_d(a, b) is
# (mean(b) - mean(a)) / pooled SD, so correct-first gives a positive d when
# incorrect responses score higher.
correct_scores = [s for s, c in items if c]
incorrect_scores = [s for s, c in items if not c]
print("cohen's d:", round(cohens_d(correct_scores, incorrect_scores), 3))
