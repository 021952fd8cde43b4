"""Feedforward score classifier: three ReLU hidden layers as wide as the
feature vector, a 3-way softmax output, and AdaGrad over minibatch SGD.

Inputs are z-scored with statistics taken from the training split and
stored with the model. Training is deterministic for a given seed: one
RNG stream initializes the weights, a second one drives the per-epoch
shuffling.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DataError, DimensionMismatch, EmptyTrainingData, InvalidLabel

FORMAT_NAME = "l2grader-mlp"
FORMAT_VERSION = 1

DEFAULT_INPUT_DIM = 116
N_CLASSES = 3
N_HIDDEN_LAYERS = 3
DEFAULT_LEARNING_RATE = 0.05
DEFAULT_EPOCHS = 200
DEFAULT_BATCH_SIZE = 32
ADAGRAD_EPS = 1e-8


class Mlp:
    def __init__(self, weights, biases, seed: int, learning_rate: float = DEFAULT_LEARNING_RATE):
        self.weights = weights
        self.biases = biases
        self.seed = seed
        self.learning_rate = learning_rate
        self.input_dim = weights[0].shape[0]
        self.mean = np.zeros(self.input_dim)
        self.scale = np.ones(self.input_dim)
        self.fingerprint = None
        self._grad_acc = None

    @classmethod
    def init(
        cls,
        seed: int,
        input_dim: int = DEFAULT_INPUT_DIM,
        n_classes: int = N_CLASSES,
        hidden_widths=None,
        learning_rate: float = DEFAULT_LEARNING_RATE,
    ) -> "Mlp":
        """Scaled-uniform weights in +-sqrt(6/(fan_in+fan_out)), zero biases."""
        if hidden_widths is None:
            hidden_widths = [input_dim] * N_HIDDEN_LAYERS
        widths = [input_dim] + list(hidden_widths) + [n_classes]
        init_seed, _ = np.random.SeedSequence(seed).spawn(2)
        rng = np.random.default_rng(init_seed)
        weights = []
        biases = []
        for fan_in, fan_out in zip(widths[:-1], widths[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            biases.append(np.zeros(fan_out))
        return cls(weights, biases, seed=seed, learning_rate=learning_rate)

    @property
    def layer_widths(self) -> list:
        return [self.weights[0].shape[0]] + [w.shape[1] for w in self.weights]

    @property
    def n_classes(self) -> int:
        return self.weights[-1].shape[1]

    # -- standardization ---------------------------------------------------

    def set_standardization(self, features: np.ndarray) -> None:
        self.mean = features.mean(axis=0)
        scale = features.std(axis=0)
        scale[scale == 0.0] = 1.0
        self.scale = scale

    def standardize(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale

    def unstandardize(self, z: np.ndarray) -> np.ndarray:
        return z * self.scale + self.mean

    # -- inference -----------------------------------------------------------

    def forward(self, x) -> np.ndarray:
        """Class probabilities; accepts one vector or a batch."""
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        batch = x[None, :] if single else x
        if batch.shape[1] != self.input_dim:
            raise DimensionMismatch(
                f"expected {self.input_dim} features, got {batch.shape[1]}"
            )
        if not np.isfinite(batch).all():
            raise DataError("non-finite feature value")
        probs = self._forward(self.standardize(batch))[-1]
        return probs[0] if single else probs

    def predict(self, x) -> int:
        """Argmax class; ties resolve toward the lowest index."""
        probs = self.forward(x)
        if probs.ndim == 1:
            return int(np.argmax(probs))
        return np.argmax(probs, axis=1)

    def _forward(self, z: np.ndarray) -> list:
        activations = [z]
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            z = np.maximum(z @ w + b, 0.0)
            activations.append(z)
        logits = z @ self.weights[-1] + self.biases[-1]
        logits = logits - logits.max(axis=1, keepdims=True)
        exp = np.exp(logits)
        activations.append(exp / exp.sum(axis=1, keepdims=True))
        return activations

    # -- training --------------------------------------------------------

    def loss_and_gradients(self, x: np.ndarray, labels: np.ndarray):
        """Mean cross-entropy and its gradients for one (raw) minibatch."""
        activations = self._forward(self.standardize(np.asarray(x, dtype=np.float64)))
        probs = activations[-1]
        n = len(labels)
        loss = -np.mean(np.log(probs[np.arange(n), labels]))
        delta = probs.copy()
        delta[np.arange(n), labels] -= 1.0
        delta /= n
        grads_w = []
        grads_b = []
        for layer in range(len(self.weights) - 1, -1, -1):
            grads_w.append(activations[layer].T @ delta)
            grads_b.append(delta.sum(axis=0))
            if layer > 0:
                delta = (delta @ self.weights[layer].T) * (activations[layer] > 0.0)
        return loss, grads_w[::-1], grads_b[::-1]

    def train(
        self,
        features: np.ndarray,
        labels,
        epochs: int = DEFAULT_EPOCHS,
        batch_size: int = DEFAULT_BATCH_SIZE,
    ) -> list:
        """Fit in place and return the per-epoch mean loss curve."""
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels)
        if features.size == 0 or len(labels) == 0:
            raise EmptyTrainingData("no training samples")
        if len(features) != len(labels):
            raise DimensionMismatch(
                f"{len(features)} feature rows for {len(labels)} labels"
            )
        if features.shape[1] != self.input_dim:
            raise DimensionMismatch(
                f"expected {self.input_dim} features, got {features.shape[1]}"
            )
        bad = set(np.unique(labels)) - set(range(self.n_classes))
        if bad:
            raise InvalidLabel(f"labels outside 0..{self.n_classes - 1}: {sorted(bad)}")
        self.set_standardization(features)
        self._grad_acc = [
            [np.zeros_like(w) for w in self.weights],
            [np.zeros_like(b) for b in self.biases],
        ]
        _, shuffle_seed = np.random.SeedSequence(self.seed).spawn(2)
        rng = np.random.default_rng(shuffle_seed)
        n = len(labels)
        losses = []
        for _ in range(epochs):
            order = rng.permutation(n)
            epoch_loss = 0.0
            for start in range(0, n, batch_size):
                batch = order[start : start + batch_size]
                loss, grads_w, grads_b = self.loss_and_gradients(
                    features[batch], labels[batch]
                )
                epoch_loss += loss * len(batch)
                self._adagrad_step(grads_w, grads_b)
            losses.append(epoch_loss / n)
        return losses

    def _adagrad_step(self, grads_w, grads_b) -> None:
        acc_w, acc_b = self._grad_acc
        for w, g, acc in zip(self.weights, grads_w, acc_w):
            acc += g * g
            w -= self.learning_rate / np.sqrt(acc + ADAGRAD_EPS) * g
        for b, g, acc in zip(self.biases, grads_b, acc_b):
            acc += g * g
            b -= self.learning_rate / np.sqrt(acc + ADAGRAD_EPS) * g

    # -- persistence -------------------------------------------------------

    def save(self, path) -> None:
        payload = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "layer_widths": self.layer_widths,
            "seed": self.seed,
            "learning_rate": self.learning_rate,
            "mean": self.mean.tolist(),
            "scale": self.scale.tolist(),
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
            "fingerprint": self.fingerprint,
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, separators=(",", ":"))
            handle.write("\n")

    @classmethod
    def load(cls, path, expected_input_dim: int | None = None) -> "Mlp":
        path = Path(path)
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
        if payload.get("format") != FORMAT_NAME or payload.get("version") != FORMAT_VERSION:
            raise DataError(f"{path}: not a recognized model file")
        model = cls(
            weights=[np.array(w, dtype=np.float64) for w in payload["weights"]],
            biases=[np.array(b, dtype=np.float64) for b in payload["biases"]],
            seed=payload["seed"],
            learning_rate=payload["learning_rate"],
        )
        model.mean = np.array(payload["mean"], dtype=np.float64)
        model.scale = np.array(payload["scale"], dtype=np.float64)
        model.fingerprint = payload.get("fingerprint")
        if expected_input_dim is not None and model.input_dim != expected_input_dim:
            raise DimensionMismatch(
                f"{path}: model expects {model.input_dim} features, "
                f"pipeline provides {expected_input_dim}"
            )
        return model
