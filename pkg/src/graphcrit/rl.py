"""Toy discovery-maximizing trainer: softmax edge policy + score-function updates.

The reward trades off three observables of the evolving graph: squared
distance of the discovery parameter from a target, semantic entropy, and
closeness of the surprising-edge fraction to a target. A linear softmax
policy over hand-crafted edge features proposes which candidate edge to
add; REINFORCE (advantage-weighted log-probability gradients) adjusts the
policy weights between episodes.

Environment graphs stay small (node cap below) so entropies are computed
exactly each step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .growth import (COHERENT_MIN_COS, SURPRISE_COS, GrowthConfig, _centroids,
                     _rng, _sample_embedding, grow)
from .spectral import (discovery_parameter, normalized_laplacian, von_neumann_entropy)

MAX_ENV_NODES = 300
ARRIVAL_PERIOD = 4       # a generator-driven node arrives every this many steps
N_RANDOM_CANDIDATES = 6
N_WEIGHTED_CANDIDATES = 2
N_FEATURES = 4           # normalized endpoint degree, cosine, bridge indicator, bias


@dataclass(frozen=True)
class RewardConfig:
    """Weights and targets of the discovery reward."""

    lambda_d: float = 1.0
    lambda_se: float = 0.0
    lambda_alpha: float = 0.0
    d_target: float = 0.0
    alpha_target: float = 0.1

    def __post_init__(self):
        if min(self.lambda_d, self.lambda_se, self.lambda_alpha) < 0:
            raise ValueError("reward weights must be non-negative")
        if self.lambda_d == self.lambda_se == self.lambda_alpha == 0:
            raise ValueError("at least one reward weight must be positive")
        if not -1.0 <= self.d_target <= 1.0:
            raise ValueError("d_target must lie in [-1, 1]")
        if not 0.0 <= self.alpha_target <= 1.0:
            raise ValueError("alpha_target must lie in [0, 1]")


@dataclass(frozen=True)
class PolicyParams:
    """Learnable weights over the candidate-edge features."""

    theta: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.theta).all():
            raise ValueError("policy weights must be finite")

    @staticmethod
    def zeros(n_features: int = N_FEATURES) -> "PolicyParams":
        return PolicyParams(theta=np.zeros(n_features))


@dataclass(frozen=True)
class PolicyStep:
    """One decision: candidate features, the pick, its log-probability, reward."""

    features: np.ndarray  # (n_candidates, n_features)
    chosen: int
    log_prob: float
    reward: float


@dataclass(frozen=True)
class EpisodeLog:
    steps: tuple[PolicyStep, ...]

    @property
    def returns(self) -> list[float]:
        # per-step reward convention (no discounting across the episode)
        return [s.reward for s in self.steps]


@dataclass(frozen=True)
class EpisodeStats:
    episode: int
    mean_reward: float
    alpha_end: float
    d_end: float


def reward(d_t: float, s_sem_t: float, alpha_t: float, cfg: RewardConfig) -> float:
    """-lambda_d (d - d_target)^2 + lambda_se * s_sem + lambda_alpha (1 - |alpha - alpha_target|)."""
    if not 0.0 <= alpha_t <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha_t}")
    return (-cfg.lambda_d * (d_t - cfg.d_target) ** 2
            + cfg.lambda_se * s_sem_t
            + cfg.lambda_alpha * (1.0 - abs(alpha_t - cfg.alpha_target)))


def policy_probs(theta: PolicyParams, candidates: np.ndarray) -> np.ndarray:
    """Softmax over theta . features, stabilized by max-subtraction."""
    feats = np.atleast_2d(np.asarray(candidates, dtype=float))
    if feats.shape[0] == 0:
        raise ValueError("empty candidate set")
    if feats.shape[1] != theta.theta.shape[0]:
        raise ValueError(f"feature dim {feats.shape[1]} != theta dim {theta.theta.shape[0]}")
    scores = feats @ theta.theta
    scores -= scores.max()
    ex = np.exp(scores)
    return ex / ex.sum()


def reinforce_update(theta: PolicyParams, episode: EpisodeLog, learning_rate: float,
                     baseline: float = 0.0) -> PolicyParams:
    """One batched score-function ascent step over an episode.

    theta <- theta + lr * sum_t (R_t - baseline) * grad log pi(a_t); the
    log-softmax gradient is f_chosen - E_pi[f]. Equivalent to gradient
    descent on -(R_t - baseline) * log pi. Aborts (naming the step) if any
    per-step gradient goes non-finite. lr = 0 is allowed and is a no-op.
    """
    if learning_rate < 0:
        raise ValueError("learning_rate must be non-negative")
    if not episode.steps:
        raise ValueError("episode is empty")
    grad = np.zeros_like(theta.theta)
    for t, step in enumerate(episode.steps):
        probs = policy_probs(theta, step.features)
        g = step.features[step.chosen] - probs @ step.features
        contrib = (step.reward - baseline) * g
        if not np.isfinite(contrib).all():
            raise ValueError(f"non-finite policy gradient at step {t}")
        grad += contrib
    return PolicyParams(theta=theta.theta + learning_rate * grad)


# ---------------------------------------------------------------------------
# Toy growth environment
# ---------------------------------------------------------------------------

class _ToyGraphEnv:
    """Mutable episode state: a small graph with unit embeddings and counters."""

    def __init__(self, base_labels: list[str], base_vectors: np.ndarray,
                 base_edges: set[tuple[int, int]], centroids: np.ndarray,
                 growth_cfg: GrowthConfig, rng: np.random.Generator):
        self.vectors = [v for v in base_vectors]
        self.adj = [set() for _ in base_labels]
        self.n_edges = 0
        self.n_surprising = 0
        self.centroids = centroids
        self.cfg = growth_cfg
        self.rng = rng
        for i, j in base_edges:
            self._link(i, j)
        self.s_sem = 0.0
        self.d_param = 0.0

    @property
    def n_nodes(self) -> int:
        return len(self.vectors)

    def cos(self, i: int, j: int) -> float:
        return float(np.clip(np.dot(self.vectors[i], self.vectors[j]), -1.0, 1.0))

    def _link(self, i: int, j: int) -> None:
        if j in self.adj[i]:
            return
        self.adj[i].add(j)
        self.adj[j].add(i)
        self.n_edges += 1
        if self.cos(i, j) < SURPRISE_COS:
            self.n_surprising += 1

    @property
    def alpha(self) -> float:
        return self.n_surprising / self.n_edges if self.n_edges else 0.0

    def maybe_arrival(self) -> None:
        """Generator-driven node arrival with one weighted coherent edge."""
        if self.n_nodes >= MAX_ENV_NODES:
            return
        centroid = self.centroids[int(self.rng.integers(len(self.centroids)))]
        vec = _sample_embedding(centroid, self.cfg.embed_noise, self.rng)
        cos = np.clip(np.array(self.vectors) @ vec, -1.0, 1.0)
        self.vectors.append(vec)
        self.adj.append(set())
        new = self.n_nodes - 1
        coherent = [j for j in range(new) if cos[j] >= COHERENT_MIN_COS]
        pool = coherent if coherent else list(range(new))
        deg = np.array([len(self.adj[j]) for j in pool], dtype=float)
        w = self.cfg.pref_weight * deg + self.cfg.sem_weight * (cos[pool] + 1.0) / 2.0
        total = float(w.sum())
        if total <= 0:
            target = pool[int(self.rng.integers(len(pool)))]
        else:
            target = pool[int(self.rng.choice(len(pool), p=w / total))]
        self._link(new, target)

    def candidate_pairs(self) -> list[tuple[int, int]]:
        """Random non-edge pairs plus generator-weighted proposals."""
        pairs: list[tuple[int, int]] = []
        n = self.n_nodes
        for _ in range(N_RANDOM_CANDIDATES):
            for _ in range(64):
                i = int(self.rng.integers(n))
                j = int(self.rng.integers(n))
                if i != j and j not in self.adj[i]:
                    pairs.append((i, j) if i < j else (j, i))
                    break
        for _ in range(N_WEIGHTED_CANDIDATES):
            i = int(self.rng.integers(n))
            open_t = [j for j in range(n) if j != i and j not in self.adj[i]]
            if not open_t:
                continue
            cos = np.array([self.cos(i, j) for j in open_t])
            deg = np.array([len(self.adj[j]) for j in open_t], dtype=float)
            w = self.cfg.pref_weight * deg + self.cfg.sem_weight * (cos + 1.0) / 2.0
            total = float(w.sum())
            if total <= 0:
                j = open_t[int(self.rng.integers(len(open_t)))]
            else:
                j = open_t[int(self.rng.choice(len(open_t), p=w / total))]
            pairs.append((i, j) if i < j else (j, i))
        if not pairs:
            raise RuntimeError("no candidate edges available (graph complete?)")
        return pairs

    def features_for(self, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
        max_deg = max((len(a) for a in self.adj), default=1) or 1
        rows = []
        for i, j in pairs:
            c = self.cos(i, j)
            rows.append([
                (len(self.adj[i]) + len(self.adj[j])) / (2.0 * max_deg),
                c,
                1.0 if c < SURPRISE_COS else 0.0,
                1.0,
            ])
        return np.array(rows)

    def add_edge(self, pair: tuple[int, int]) -> None:
        self._link(*pair)

    def metrics(self) -> tuple[float, float, float]:
        """(d_param, s_sem, alpha) of the current graph, computed exactly."""
        n = self.n_nodes
        a = np.zeros((n, n))
        for i in range(n):
            for j in self.adj[i]:
                a[i, j] = 1.0
        s_struct = von_neumann_entropy(
            normalized_laplacian(a, a.sum(axis=1))).entropy_nats
        unit = np.array(self.vectors)
        cos = np.clip(unit @ unit.T, -1.0, 1.0)
        a_sem = (cos + 1.0) / 2.0
        np.fill_diagonal(a_sem, 0.0)
        s_sem = von_neumann_entropy(
            normalized_laplacian(a_sem, a_sem.sum(axis=1))).entropy_nats
        d = discovery_parameter(s_struct, s_sem)
        self.s_sem = s_sem
        self.d_param = d
        return d, s_sem, self.alpha


def train(env_config: GrowthConfig, reward_cfg: RewardConfig, episodes: int,
          steps_per_episode: int, lr: float, seed: int,
          ) -> tuple[PolicyParams, list[EpisodeStats]]:
    """Synchronous REINFORCE over the toy growth environment.

    Every episode restarts from the same generated base graph; each step
    the policy picks one candidate edge, the edge lands in the graph, and
    the reward is computed from the exact entropy/surprise metrics of the
    updated graph. The advantage baseline is the running mean of episode
    mean rewards. Fully deterministic for a fixed seed.
    """
    if episodes < 0 or steps_per_episode < 1:
        raise ValueError("episodes must be >= 0 and steps_per_episode >= 1")
    theta = PolicyParams.zeros()
    curve: list[EpisodeStats] = []
    if episodes == 0:
        return theta, curve

    base = grow(env_config)
    if base.series.final.n_nodes > MAX_ENV_NODES:
        raise ValueError(
            f"base graph has {base.series.final.n_nodes} nodes; the exact-entropy "
            f"environment is capped at {MAX_ENV_NODES}. Shrink the growth config.")
    base_labels = list(base.series.final.nodes)
    label_index = {lab: i for i, lab in enumerate(base_labels)}
    base_vectors = np.array([base.embeddings.get(lab) for lab in base_labels])
    base_edges = {(label_index[u], label_index[v]) for u, v in base.series.final.edges}
    centroids = _centroids(env_config, _rng(env_config.seed, 0))

    # entropies are expensive (dense eigensolves); skip them per step when
    # their reward weights are zero and only compute them for episode stats
    need_entropy = reward_cfg.lambda_d > 0 or reward_cfg.lambda_se > 0

    baseline = 0.0
    for ep in range(episodes):
        rng = _rng(seed, ep + 1)
        env = _ToyGraphEnv(base_labels, base_vectors, base_edges, centroids,
                           env_config, rng)
        steps: list[PolicyStep] = []
        for t in range(steps_per_episode):
            try:
                if (t + 1) % ARRIVAL_PERIOD == 0:
                    env.maybe_arrival()
                pairs = env.candidate_pairs()
                feats = env.features_for(pairs)
                probs = policy_probs(theta, feats)
                chosen = int(rng.choice(len(pairs), p=probs))
                env.add_edge(pairs[chosen])
                if need_entropy:
                    d, s_sem, alpha = env.metrics()
                else:
                    d, s_sem, alpha = 0.0, 0.0, env.alpha
                r = reward(d, s_sem, alpha, reward_cfg)
            except Exception as exc:
                raise RuntimeError(f"episode {ep} step {t}: {exc}") from exc
            steps.append(PolicyStep(features=feats, chosen=chosen,
                                    log_prob=float(np.log(probs[chosen])),
                                    reward=r))
        env.metrics()  # refresh alpha/d for the episode stats row
        episode = EpisodeLog(steps=tuple(steps))
        mean_reward = float(np.mean(episode.returns))
        # running mean includes the current episode, so advantages are
        # centered from the very first update
        baseline = (baseline * ep + mean_reward) / (ep + 1)
        theta = reinforce_update(theta, episode, lr, baseline)
        curve.append(EpisodeStats(episode=ep, mean_reward=mean_reward,
                                  alpha_end=env.alpha, d_end=env.d_param))
    return theta, curve
