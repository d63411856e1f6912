"""Hand-rolled metric oracle: plain loops, no shared code with the library."""

from __future__ import annotations

import math


def oracle_std(values):
    n = len(values)
    if n <= 1:
        return 0.0
    total = 0.0
    for v in values:
        total += v
    mean = total / n
    acc = 0.0
    for v in values:
        acc += (v - mean) * (v - mean)
    return math.sqrt(acc / (n - 1))


def oracle_precision(values):
    return oracle_std(values) / math.sqrt(len(values))


def oracle_cop(precision):
    return math.exp(-precision)


def oracle_scor(values, n_trials):
    n = len(values)
    confidence = n / n_trials
    if n == 0:
        return None, None, confidence, 0.0
    precision = oracle_precision(values)
    cop = oracle_cop(precision)
    return precision, cop, confidence, cop * confidence


def oracle_mae(pred, truth):
    total = 0.0
    for p, t in zip(pred, truth):
        total += abs(p - t)
    return total / len(pred)


def oracle_accuracy(pred, truth):
    hits = 0
    for p, t in zip(pred, truth):
        if p == t:
            hits += 1
    return hits / len(pred)


def oracle_f1_macro(pred, truth):
    labels = sorted(set(pred) | set(truth))
    f1s = []
    for lab in labels:
        tp = sum(1 for p, t in zip(pred, truth) if p == lab and t == lab)
        fp = sum(1 for p, t in zip(pred, truth) if p == lab and t != lab)
        fn = sum(1 for p, t in zip(pred, truth) if p != lab and t == lab)
        if 2 * tp + fp + fn == 0:
            f1s.append(0.0)
        else:
            f1s.append(2 * tp / (2 * tp + fp + fn))
    return sum(f1s) / len(f1s)


def oracle_r2(pred, truth):
    n = len(truth)
    mean_t = 0.0
    for t in truth:
        mean_t += t
    mean_t /= n
    ss_tot = 0.0
    for t in truth:
        ss_tot += (t - mean_t) * (t - mean_t)
    ss_res = 0.0
    for p, t in zip(pred, truth):
        ss_res += (p - t) * (p - t)
    return 1.0 - ss_res / ss_tot
