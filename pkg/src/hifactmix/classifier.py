"""Shallow feed-forward veracity classifier over claim embeddings.

Architecture: input -> hidden (ReLU) -> 4-way softmax. Forward pass,
backpropagation, and the SGD training loop are written out explicitly in
double precision; the only dependency is numpy linear algebra. Everything
is deterministic for a fixed seed (splitmix64 drives both initialization
and the per-epoch shuffle).
"""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivergenceError,
    EmptyBatchError,
    EmptySetError,
    FormatError,
    NonFiniteInputError,
)
from .metrics import macro_f1
from .rng import SplitMix64
from .types import EMBED_DIM, LABEL_ORDER, N_LABELS, VeracityLabel

CHECKPOINT_FORMAT = "hifact-mlp"
CHECKPOINT_VERSION = 1


@dataclass
class MLPParams:
    W1: np.ndarray  # (H, D)
    b1: np.ndarray  # (H,)
    W2: np.ndarray  # (4, H)
    b2: np.ndarray  # (4,)

    @property
    def hidden_width(self) -> int:
        return self.W1.shape[0]

    @property
    def input_dim(self) -> int:
        return self.W1.shape[1]

    def copy(self) -> "MLPParams":
        return MLPParams(self.W1.copy(), self.b1.copy(), self.W2.copy(), self.b2.copy())


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 50
    patience: int = 5
    seed: int = 0
    hidden_width: int = 256

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        for name in ("batch_size", "max_epochs", "patience", "hidden_width"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass
class TrainReport:
    epochs_run: int
    train_loss_curve: list[float]
    val_macro_f1_curve: list[float]
    best_epoch: int
    final_val_macro_f1: float

    def to_dict(self) -> dict:
        return {
            "epochs_run": self.epochs_run,
            "train_loss_curve": self.train_loss_curve,
            "val_macro_f1_curve": self.val_macro_f1_curve,
            "best_epoch": self.best_epoch,
            "final_val_macro_f1": self.final_val_macro_f1,
        }


def init_params(hidden_width: int, seed: int, input_dim: int = EMBED_DIM) -> MLPParams:
    """Glorot-uniform weights via the documented splitmix64 stream, zero
    biases. Weight matrices are filled row-major so the stream layout is
    reproducible in any language."""
    if hidden_width < 1:
        raise ValueError("hidden_width must be >= 1")
    rng = SplitMix64(seed)

    def glorot(rows: int, cols: int) -> np.ndarray:
        limit = np.sqrt(6.0 / (rows + cols))
        flat = np.empty(rows * cols, dtype=np.float64)
        for i in range(rows * cols):
            flat[i] = (2.0 * rng.next_float() - 1.0) * limit
        return flat.reshape(rows, cols)

    # fan_in + fan_out per layer: (input_dim + H) and (H + 4)
    W1 = glorot(hidden_width, input_dim)
    W2 = glorot(N_LABELS, hidden_width)
    return MLPParams(
        W1=W1,
        b1=np.zeros(hidden_width, dtype=np.float64),
        W2=W2,
        b2=np.zeros(N_LABELS, dtype=np.float64),
    )


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def forward(params: MLPParams, x) -> np.ndarray:
    """Class probabilities in VeracityLabel code order; sums to 1 within
    1e-9 thanks to max-subtracted softmax."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (params.input_dim,) or not np.all(np.isfinite(x)):
        raise NonFiniteInputError(
            f"input must be a finite vector of length {params.input_dim}"
        )
    h = np.maximum(params.W1 @ x + params.b1, 0.0)
    z = params.W2 @ h + params.b2
    return _softmax(z)


def predict(params: MLPParams, x) -> tuple[VeracityLabel, float, np.ndarray]:
    """Argmax label (ties to the lowest code), its probability, all probs."""
    probs = forward(params, x)
    code = int(np.argmax(probs))  # argmax returns the first max: lowest code
    return VeracityLabel(code), float(probs[code]), probs


def loss_and_grad(
    params: MLPParams,
    batch: list[tuple[np.ndarray, VeracityLabel]],
) -> tuple[float, MLPParams]:
    """Mean cross-entropy over the batch and its gradients, by backprop.

    Output layer uses the fused softmax + cross-entropy gradient
    (probabilities minus one-hot); the hidden layer applies the ReLU mask.
    """
    if not batch:
        raise EmptyBatchError("batch must be non-empty")
    X = np.stack([np.asarray(x, dtype=np.float64) for x, _ in batch])  # (B, D)
    y = np.array([int(lbl) for _, lbl in batch])
    B = X.shape[0]

    A1 = X @ params.W1.T + params.b1          # (B, H) pre-activation
    H1 = np.maximum(A1, 0.0)
    Z = H1 @ params.W2.T + params.b2          # (B, 4) logits
    P = _softmax(Z)

    loss = float(-np.mean(np.log(P[np.arange(B), y])))

    dZ = P.copy()
    dZ[np.arange(B), y] -= 1.0
    dZ /= B
    gW2 = dZ.T @ H1
    gb2 = dZ.sum(axis=0)
    dH1 = dZ @ params.W2
    dA1 = dH1 * (A1 > 0.0)
    gW1 = dA1.T @ X
    gb1 = dA1.sum(axis=0)
    return loss, MLPParams(W1=gW1, b1=gb1, W2=gW2, b2=gb2)


def train(
    train_set: list[tuple[np.ndarray, VeracityLabel]],
    val_set: list[tuple[np.ndarray, VeracityLabel]],
    config: TrainConfig,
    input_dim: int = EMBED_DIM,
) -> tuple[MLPParams, TrainReport]:
    """Plain mini-batch SGD with early stopping on validation macro-F1.

    Keeps the best-so-far parameters; stops after `patience` epochs without
    improvement or at `max_epochs`. Deterministic for fixed inputs + seed.
    """
    if not train_set or not val_set:
        raise EmptySetError("train and validation sets must be non-empty")
    params = init_params(config.hidden_width, config.seed, input_dim=input_dim)
    rng = SplitMix64(config.seed ^ 0xA5A5A5A5A5A5A5A5)

    val_gold = [lbl for _, lbl in val_set]

    def val_score(p: MLPParams) -> float:
        preds = [predict(p, x)[0] for x, _ in val_set]
        return macro_f1(val_gold, preds)[0]

    best = params.copy()
    best_score = -1.0
    best_epoch = 0
    since_improved = 0
    loss_curve: list[float] = []
    val_curve: list[float] = []

    order = list(range(len(train_set)))
    for epoch in range(1, config.max_epochs + 1):
        rng.shuffle(order)
        epoch_losses = []
        for start in range(0, len(order), config.batch_size):
            batch = [train_set[i] for i in order[start:start + config.batch_size]]
            loss, grads = loss_and_grad(params, batch)
            if not np.isfinite(loss):
                raise DivergenceError(f"non-finite loss at epoch {epoch}")
            lr = config.learning_rate
            params.W1 -= lr * grads.W1
            params.b1 -= lr * grads.b1
            params.W2 -= lr * grads.W2
            params.b2 -= lr * grads.b2
            epoch_losses.append(loss)
        loss_curve.append(float(np.mean(epoch_losses)))
        score = val_score(params)
        val_curve.append(score)
        if score > best_score:
            best = params.copy()
            best_score = score
            best_epoch = epoch
            since_improved = 0
        else:
            since_improved += 1
            if since_improved >= config.patience:
                break

    report = TrainReport(
        epochs_run=len(loss_curve),
        train_loss_curve=loss_curve,
        val_macro_f1_curve=val_curve,
        best_epoch=best_epoch,
        final_val_macro_f1=best_score,
    )
    return best, report


# --- checkpoint persistence -------------------------------------------------

def _encode_block(a: np.ndarray) -> str:
    return base64.b64encode(a.astype("<f8").tobytes(order="C")).decode("ascii")


def _decode_block(s: str, shape: tuple[int, ...]) -> np.ndarray:
    raw = base64.b64decode(s.encode("ascii"))
    expected = 8 * int(np.prod(shape))
    if len(raw) != expected:
        raise FormatError(f"weight block has {len(raw)} bytes, expected {expected}")
    return np.frombuffer(raw, dtype="<f8").reshape(shape).copy()


def checkpoint_save(params: MLPParams, path: str) -> None:
    """Single self-describing JSON file: header plus row-major base64
    float64 weight blocks."""
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "hidden_width": params.hidden_width,
        "input_dim": params.input_dim,
        "label_order": LABEL_ORDER,
        "weights": {
            "W1": _encode_block(params.W1),
            "b1": _encode_block(params.b1),
            "W2": _encode_block(params.W2),
            "b2": _encode_block(params.b2),
        },
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, sort_keys=True)


def checkpoint_load(path: str) -> MLPParams:
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise FormatError(f"checkpoint is not valid JSON: {e.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != CHECKPOINT_FORMAT:
        raise FormatError(f"not a {CHECKPOINT_FORMAT} checkpoint")
    if doc.get("version") != CHECKPOINT_VERSION:
        raise FormatError(f"unsupported checkpoint version {doc.get('version')}")
    if doc.get("label_order") != LABEL_ORDER:
        raise FormatError(f"label order mismatch: {doc.get('label_order')}")
    try:
        h = int(doc["hidden_width"])
        d = int(doc.get("input_dim", EMBED_DIM))
        w = doc["weights"]
        params = MLPParams(
            W1=_decode_block(w["W1"], (h, d)),
            b1=_decode_block(w["b1"], (h,)),
            W2=_decode_block(w["W2"], (N_LABELS, h)),
            b2=_decode_block(w["b2"], (N_LABELS,)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed checkpoint: {e}") from None
    for block in (params.W1, params.b1, params.W2, params.b2):
        if not np.all(np.isfinite(block)):
            raise FormatError("checkpoint contains non-finite weights")
    return params
