"""
Best-of-N selection and voting
==============================

Generates a synthetic candidate pool per prompt, keeps the k most stable
responses, and compares plain majority voting against confidence-weighted
voting as the sampling budget grows.
"""

from entrodyn import (
    CandidatePool,
    ConfidenceKind,
    best_k_filter,
    generate_pool_corpus,
    majority_vote,
    pool_metrics,
    score_response,
    weighted_borda_vote,
)

# 12 prompts, 64 sampled candidates each. Correct candidates draw calm
# entropy profiles; incorrect ones draw spiky profiles, with noise blurring
# the separation the way real traces do.
records = generate_pool_corpus(
    pools=12, pool_size=64, correct_rate=0.4, noise_scale=0.25, seed=2024
)

groups: dict[str, list] = {}
for record in records:
    groups.setdefault(record.prompt_id, []).append(record)

# Score every candidate once; pools for different budgets reuse prefixes.
scored = {pid: [score_response(r) for r in rs] for pid, rs in groups.items()}

K = 8
print(f"{'m':>3} {'pool':>5} {'kept-acc':>9} {'majority':>9} {'weighted':>9}")
for m in (1, 2, 4, 8):
    kept_acc = majority_hits = weighted_hits = 0.0
    for pid, candidates in scored.items():
        pool = CandidatePool(prompt_id=pid, candidates=tuple(candidates[: m * K]))

        # Keep the K candidates with the lowest instability score.
        kept = best_k_filter(pool, K, ConfidenceKind.EDIS)
        kept_acc += sum(c.response.correct for c in kept.candidates) / K

        # Majority vote over the kept answers vs a vote where each answer
        # is weighted by 1 / (score + epsilon), so calm responses count more.
        truth = next(
            c.response.answer for c in pool.candidates if c.response.correct
        )
        majority_hits += majority_vote(kept) == truth
        weighted_hits += weighted_borda_vote(kept, ConfidenceKind.EDIS) == truth

    n = len(scored)
    print(
        f"{m:>3} {m * K:>5} {kept_acc / n:>9.3f}"
        f" {majority_hits / n:>9.3f} {weighted_hits / n:>9.3f}"
    )

# pool_metrics bundles the same numbers for one pool: fraction of correct
# candidates, whether the single best candidate is right, and whether the
# unweighted majority would have been right.
pid, candidates = next(iter(scored.items()))
pool = CandidatePool(prompt_id=pid, candidates=tuple(candidates[:16]))
report = pool_metrics(pool, ConfidenceKind.EDIS)
print("\nsingle pool:", pid)
print("  pool accuracy:", round(report.avg_accuracy, 3))
print("  best-scored candidate correct:", bool(report.best_scored_accuracy))
print("  majority answer correct:", bool(report.majority_accuracy))
print("  majority answer:", report.winning_answer)
