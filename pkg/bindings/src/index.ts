/**
 * Pure TypeScript mirror of the entrodyn scoring and curation math, for
 * embedding entropy-dynamics signals in a JS training or serving loop
 * without shelling out per call.
 *
 * Every arithmetic step accumulates left to right in the same order as the
 * Python library, so on identical inputs the pure +,-,*,/ paths (spike
 * counts, variance, the instability score, standardized advantages) agree
 * bit for bit; paths through exp/ln (the softmax weights) agree to within
 * 1e-12 across math libraries. All entropies are in nats.
 *
 * Entry points are stateless and reentrant: no globals, no caches.
 */

/** Must match the Python package version this mirror was written against. */
export const VERSION = "0.1.0";

/** Spike detector parameters; keys match the Python config surface. */
export interface SpikeParams {
    window_w?: number;
    tau_burst?: number;
    tau_rebound?: number;
    tau_diff?: number;
}

export interface ScoreResult {
    edis: number;
    burst: number;
    rebound: number;
    mean_entropy: number;
    variance: number;
}

export interface CurationResult {
    norm_weights: Float64Array;
    advantages: Float64Array;
    weighted_advantages: Float64Array;
}

const DEFAULT_WINDOW = 5;
const DEFAULT_TAU_BURST = 1.36;
const DEFAULT_TAU_REBOUND = 1.33;
const DEFAULT_TAU_DIFF = 0.7;

// Population sigma below this is treated as degenerate (all-equal values).
const SIGMA_FLOOR = 1e-12;

function asFloat64(values: ArrayLike<number>, name: string): Float64Array {
    // Zero-copy when the host already holds a Float64Array.
    const view =
        values instanceof Float64Array ? values : Float64Array.from(values);
    if (view.length === 0) {
        throw new RangeError(`${name} must be nonempty`);
    }
    return view;
}

function checkEntropies(h: Float64Array): void {
    for (let i = 0; i < h.length; i++) {
        if (!Number.isFinite(h[i]) || h[i] < 0) {
            throw new RangeError(
                `entropies must be finite and nonnegative, got ${h[i]} at index ${i}`,
            );
        }
    }
}

function resolveParams(config?: SpikeParams) {
    const w = config?.window_w ?? DEFAULT_WINDOW;
    const tauBurst = config?.tau_burst ?? DEFAULT_TAU_BURST;
    const tauRebound = config?.tau_rebound ?? DEFAULT_TAU_REBOUND;
    const tauDiff = config?.tau_diff ?? DEFAULT_TAU_DIFF;
    if (!Number.isInteger(w) || w < 1) {
        throw new RangeError(`window_w must be an integer >= 1, got ${w}`);
    }
    for (const [name, value] of [
        ["tau_burst", tauBurst],
        ["tau_rebound", tauRebound],
        ["tau_diff", tauDiff],
    ] as const) {
        if (!(value > 0)) {
            throw new RangeError(`${name} must be > 0, got ${value}`);
        }
    }
    return { w, tauBurst, tauRebound, tauDiff };
}

/** Mean and population sigma, accumulated left to right. */
function populationStats(values: Float64Array): [number, number] {
    const n = values.length;
    let total = 0.0;
    for (let i = 0; i < n; i++) {
        total += values[i];
    }
    const mu = total / n;
    let acc = 0.0;
    for (let i = 0; i < n; i++) {
        const d = values[i] - mu;
        acc += d * d;
    }
    return [mu, Math.sqrt(acc / n)];
}

/**
 * Score one entropy trajectory: burst and rebound spike counts, mean,
 * population variance, and the instability score
 * edis = (burst + rebound) / 2 * (1 + variance).
 *
 * Throws RangeError on empty input, NaN/negative entries, or bad params.
 */
export function scoreTrajectory(
    entropies: ArrayLike<number>,
    config?: SpikeParams,
): ScoreResult {
    const h = asFloat64(entropies, "entropies");
    checkEntropies(h);
    const { w, tauBurst, tauRebound } = resolveParams(config);
    const n = h.length;

    let burst = 0;
    for (let t = 0; t + w < n; t++) {
        if (h[t + w] - h[t] > tauBurst) {
            burst++;
        }
    }

    let rebound = 0;
    if (n >= 2) {
        let runningMin = h[0];
        for (let t = 1; t < n; t++) {
            if (h[t] - runningMin > tauRebound) {
                rebound++;
            }
            if (h[t] < runningMin) {
                runningMin = h[t];
            }
        }
    }

    let total = 0.0;
    for (let i = 0; i < n; i++) {
        total += h[i];
    }
    const mean = total / n;
    let acc = 0.0;
    for (let i = 0; i < n; i++) {
        const d = h[i] - mean;
        acc += d * d;
    }
    const variance = acc / n;

    const score = (burst + rebound) / 2;
    return {
        edis: score * (1.0 + variance),
        burst,
        rebound,
        mean_entropy: mean,
        variance,
    };
}

/**
 * Reweight one sampled group for RL updates.
 *
 * Pipeline: z-score ln(edis + 1) with population sigma; flip the sign for
 * correct members; softmax(s / alpha) scaled by the group size; renormalize
 * within each correctness class so the class keeps its total mass (groups
 * with a single class short-circuit to unit weights); multiply the
 * group-standardized reward advantages by the normalized weights.
 *
 * Throws RangeError on empty input, length mismatch, or alpha <= 0.
 */
export function curateGroup(
    edis: ArrayLike<number>,
    correct: ArrayLike<boolean>,
    rewards: ArrayLike<number>,
    alpha: number,
): CurationResult {
    const e = asFloat64(edis, "edis");
    const r = asFloat64(rewards, "rewards");
    const n = e.length;
    if (correct.length !== n || r.length !== n) {
        throw new RangeError(
            `length mismatch: ${n} edis vs ${correct.length} correct vs ${r.length} rewards`,
        );
    }
    if (!(alpha > 0)) {
        throw new RangeError(`alpha must be > 0, got ${alpha}`);
    }
    for (let i = 0; i < n; i++) {
        if (!Number.isFinite(e[i]) || e[i] < 0) {
            throw new RangeError(
                `edis values must be finite and nonnegative, got ${e[i]} at index ${i}`,
            );
        }
    }

    const logs = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        logs[i] = Math.log(e[i] + 1.0);
    }
    const [mu, sigma] = populationStats(logs);
    const zs = new Float64Array(n);
    if (sigma >= SIGMA_FLOOR) {
        for (let i = 0; i < n; i++) {
            zs[i] = (logs[i] - mu) / sigma;
        }
    }

    const scaled = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        const signed = correct[i] ? -zs[i] : zs[i];
        scaled[i] = signed / alpha;
    }
    let peak = scaled[0];
    for (let i = 1; i < n; i++) {
        if (scaled[i] > peak) {
            peak = scaled[i];
        }
    }
    const exps = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        exps[i] = Math.exp(scaled[i] - peak);
    }
    let expTotal = 0.0;
    for (let i = 0; i < n; i++) {
        expTotal += exps[i];
    }
    const raw = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        raw[i] = (exps[i] / expTotal) * n;
    }

    let hasCorrect = false;
    let hasIncorrect = false;
    for (let i = 0; i < n; i++) {
        if (correct[i]) {
            hasCorrect = true;
        } else {
            hasIncorrect = true;
        }
    }
    const normWeights = new Float64Array(n);
    if (hasCorrect && hasIncorrect) {
        let sumTrue = 0.0;
        let sumFalse = 0.0;
        let sizeTrue = 0;
        let sizeFalse = 0;
        for (let i = 0; i < n; i++) {
            if (correct[i]) {
                sumTrue += raw[i];
                sizeTrue++;
            } else {
                sumFalse += raw[i];
                sizeFalse++;
            }
        }
        for (let i = 0; i < n; i++) {
            normWeights[i] = correct[i]
                ? (raw[i] / sumTrue) * sizeTrue
                : (raw[i] / sumFalse) * sizeFalse;
        }
    } else {
        normWeights.fill(1.0);
    }

    const [rewardMu, rewardSigma] = populationStats(r);
    const advantages = new Float64Array(n);
    if (rewardSigma >= SIGMA_FLOOR) {
        for (let i = 0; i < n; i++) {
            advantages[i] = (r[i] - rewardMu) / rewardSigma;
        }
    }
    const weighted = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        weighted[i] = advantages[i] * normWeights[i];
    }
    return {
        norm_weights: normWeights,
        advantages,
        weighted_advantages: weighted,
    };
}
