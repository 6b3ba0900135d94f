"""Independent literal re-implementations used as test oracles.

Everything here is written as straight-line, 1-based-index code mirroring the
defining formulas directly, with no reuse of library internals. Slow is fine;
honest is mandatory.
"""

from __future__ import annotations

import math


def oracle_entropy(probs) -> float:
    total = sum(probs)
    acc = 0.0
    for p in probs:
        q = p / total
        if q > 0:
            acc -= q * math.log(q)
    return acc


def oracle_mean(h) -> float:
    return sum(h) / len(h)


def oracle_variance(h) -> float:
    mu = sum(h) / len(h)
    return sum((x - mu) ** 2 for x in h) / len(h)


def oracle_burst(h, w, tau_b) -> int:
    # Sum over t = 1 .. T-w of 1[H_{t+w} - H_t > tau_b], 1-based.
    big_t = len(h)
    count = 0
    for t in range(1, big_t - w + 1):
        if h[(t + w) - 1] - h[t - 1] > tau_b:
            count += 1
    return count


def oracle_rebound(h, tau_r) -> int:
    # Sum over t = 2 .. T of 1[H_t - min_{s<t} H_s > tau_r], 1-based.
    big_t = len(h)
    count = 0
    for t in range(2, big_t + 1):
        past = [h[s - 1] for s in range(1, t)]
        if h[t - 1] - min(past) > tau_r:
            count += 1
    return count


def oracle_diff(h, tau_diff) -> int:
    count = 0
    for t in range(1, len(h)):
        if abs(h[t] - h[t - 1]) > tau_diff:
            count += 1
    return count


def oracle_edis(h, w, tau_b, tau_r) -> float:
    s = (oracle_burst(h, w, tau_b) + oracle_rebound(h, tau_r)) / 2
    return s * (1 + oracle_variance(h))


def oracle_grpo(rewards) -> list[float]:
    n = len(rewards)
    mu = sum(rewards) / n
    sigma = math.sqrt(sum((r - mu) ** 2 for r in rewards) / n)
    if sigma < 1e-12:
        return [0.0] * n
    return [(r - mu) / sigma for r in rewards]


def oracle_sequence_weights(edis_values, correct, rewards, alpha):
    """Straight-line weighting pipeline. Returns (z, s, raw, norm, adv, weighted)."""
    n = len(edis_values)
    logs = [math.log(e + 1) for e in edis_values]
    mu = sum(logs) / n
    sigma = math.sqrt(sum((x - mu) ** 2 for x in logs) / n)
    if sigma < 1e-12:
        z = [0.0] * n
    else:
        z = [(x - mu) / sigma for x in logs]
    s = [-z[i] if correct[i] else z[i] for i in range(n)]
    exps = [math.exp(s[i] / alpha) for i in range(n)]
    denom = sum(exps)
    raw = [e / denom * n for e in exps]
    any_c = any(correct)
    any_i = any(not c for c in correct)
    if any_c and any_i:
        sum_c = sum(raw[i] for i in range(n) if correct[i])
        sum_i = sum(raw[i] for i in range(n) if not correct[i])
        n_c = sum(1 for c in correct if c)
        n_i = n - n_c
        norm = [
            raw[i] / sum_c * n_c if correct[i] else raw[i] / sum_i * n_i
            for i in range(n)
        ]
    else:
        norm = [1.0] * n
    adv = oracle_grpo(rewards)
    weighted = [adv[i] * norm[i] for i in range(n)]
    return z, s, raw, norm, adv, weighted


def oracle_auc(scores, labels, lower_is_confident) -> float:
    """Brute-force pair counting with 0.5 tie credit."""
    pos = [s for s, c in zip(scores, labels) if c]
    neg = [s for s, c in zip(scores, labels) if not c]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p == q:
                wins += 0.5
            elif lower_is_confident:
                wins += 1.0 if p < q else 0.0
            else:
                wins += 1.0 if p > q else 0.0
    return wins / (len(pos) * len(neg))


def oracle_majority(answers) -> str:
    """Highest count; ties toward the answer whose first supporter is earliest."""
    best = None
    best_count = -1
    # Input-order scan: equal counts never replace, so the answer whose first
    # supporter appears earliest wins every tie.
    for answer in answers:
        count = sum(1 for a in answers if a == answer)
        if count > best_count:
            best = answer
            best_count = count
    return best


def oracle_weighted_vote(answers, scores, lower_is_confident, epsilon) -> str:
    totals: dict[str, float] = {}
    first_seen: dict[str, int] = {}
    for i, (answer, score) in enumerate(zip(answers, scores)):
        if lower_is_confident:
            weight = 1.0 / (score + epsilon)
        else:
            weight = max(score, 0.0)
        totals[answer] = totals.get(answer, 0.0) + weight
        if answer not in first_seen:
            first_seen[answer] = i
    best = None
    for answer in totals:
        if best is None or totals[answer] > totals[best] or (
            totals[answer] == totals[best] and first_seen[answer] < first_seen[best]
        ):
            best = answer
    return best


def oracle_retention(scores, labels, lower_is_confident, q) -> float:
    n = len(scores)
    kept_n = min(n, max(1, math.ceil(q * n - 1e-9)))
    order = sorted(
        range(n), key=lambda i: (scores[i] if lower_is_confident else -scores[i], i)
    )
    kept = order[:kept_n]
    return sum(1 for i in kept if labels[i]) / kept_n


def oracle_pearson(xs, ys) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((xs[i] - mx) * (ys[i] - my) for i in range(n))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return sxy / math.sqrt(sxx * syy)


def oracle_ranks(values) -> list[float]:
    """Midrank assignment: ties share the average of their positions."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + 1 + j + 1) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks
