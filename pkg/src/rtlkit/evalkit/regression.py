"""Regression error metrics for performance prediction."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError


def regression_metrics(y: np.ndarray, y_hat: np.ndarray) -> dict[str, float]:
    """r2_score, MAPE (in percent), and root relative squared error.

    Both r2 and RRSE normalize by squared deviation from the mean of the
    true values, so rrse == sqrt(1 - r2) holds identically. MAPE requires
    every true value to be nonzero.
    """
    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape or y.ndim != 1:
        raise DomainError("y and y_hat must be 1-D arrays of equal length")
    if y.shape[0] < 2:
        raise DomainError("regression metrics need at least 2 samples")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(y_hat))):
        raise DomainError("regression metrics require finite values")
    if np.any(y == 0.0):
        raise DomainError("MAPE is undefined when any true value is zero")
    denom = float(np.sum((y - y.mean()) ** 2))
    if denom == 0.0:
        raise DomainError("r2 and RRSE are undefined for zero-variance targets")
    sse = float(np.sum((y - y_hat) ** 2))
    return {
        "r2_score": 1.0 - sse / denom,
        "mape_percent": float(np.mean(np.abs((y - y_hat) / y))) * 100.0,
        "rrse": float(np.sqrt(sse / denom)),
    }
