"""
Signaux, croyances des électeurs et décision de « like ».

Chaque politicien émet des messages dont la position idéologique est tirée de
sa propre distribution; les autres politiciens décident de les « liker » en
arbitrant entre le gain de popularité (rapprochement perçu de leur
front-runner) et le coût d'authenticité (distance du message à leur propre
idéologie).
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from polarisation_likes.enums import GammaMode
from polarisation_likes.rng import stream_rng
from polarisation_likes.spatial import Electorate, Politician, SpatialEngine

logger = logging.getLogger(__name__)

DEFAULT_MESSAGES = 500
DEFAULT_GAMMA_SWEEP = (0.0, 0.05, 0.1, 0.15, 0.2)


@dataclass(frozen=True)
class Message:
    """Message émis par un politicien à la position δ."""

    sender: str
    delta: float


@dataclass(frozen=True)
class SimulationConfig:
    """Paramètres d'une simulation de likes."""

    omega: float = 1.0
    messages_per_politician: int = DEFAULT_MESSAGES
    seed: int = 0
    gamma_mode: GammaMode = GammaMode.HETEROGENEOUS
    gamma: float = 0.0
    gamma_mean: float = 0.1
    gamma_sd: float = 0.1

    def __post_init__(self):
        object.__setattr__(self, "gamma_mode", GammaMode(self.gamma_mode))
        if self.omega < 0:
            raise ValueError(f"omega doit être >= 0: {self.omega}")
        if self.messages_per_politician < 1:
            raise ValueError(f"au moins un message par politicien: {self.messages_per_politician}")
        if self.gamma < 0:
            raise ValueError(f"gamma doit être >= 0: {self.gamma}")
        if self.gamma_sd < 0:
            raise ValueError(f"gamma_sd doit être >= 0: {self.gamma_sd}")


@dataclass(frozen=True, eq=False)
class LikeMatrix:
    """
    Matrice N×N des likes: l'entrée (i, j) compte les likes donnés par i aux
    messages de j.
    """

    ids: Tuple[str, ...]
    counts: np.ndarray
    politicians: Tuple[Politician, ...] = field(default=())

    def symmetrized(self) -> np.ndarray:
        """Interactions non orientées L + Lᵀ."""
        return self.counts + self.counts.T

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def to_frame(self) -> pd.DataFrame:
        """Format long `liker_id,sender_id,likes`."""
        n = len(self.ids)
        liker, sender = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        return pd.DataFrame({
            "liker_id": [self.ids[i] for i in liker.ravel()],
            "sender_id": [self.ids[j] for j in sender.ravel()],
            "likes": self.counts.ravel(),
        })


class SignalingEngine:
    """
    Moteur de simulation des likes entre politiciens.
    """

    @staticmethod
    def posterior(mu: float, delta: float, omega: float) -> float:
        """
        Croyance a posteriori μ* = μ/(1+ω) + ω/(1+ω)·δ.

        Args:
            mu: Idéologie a priori
            delta: Signal observé
            omega: Poids du signal (>= 0)

        Returns:
            Idéologie a posteriori
        """
        return mu / (1.0 + omega) + (omega / (1.0 + omega)) * delta

    @staticmethod
    def like_decision(liker: Politician, message: Message,
                      front_runner_mu: float, omega: float) -> bool:
        """
        Décision de liker un message: vrai ssi ΔP - γ·ΔA > 0.

        ΔP = |μ_i - μ^f| - |μ*_i - μ^f| (positif = gain électoral) et
        ΔA = |δ - μ_i| / σ_i.

        Args:
            liker: Politicien qui décide
            message: Message d'un autre politicien
            front_runner_mu: Idéologie du front-runner de la coalition du liker
            omega: Poids du signal

        Returns:
            True si le like est donné
        """
        if liker.id == message.sender:
            raise ValueError("un politicien ne like pas ses propres messages")
        updated = SignalingEngine.posterior(liker.mu, message.delta, omega)
        popularity = abs(liker.mu - front_runner_mu) - abs(updated - front_runner_mu)
        authenticity = abs(message.delta - liker.mu) / liker.sigma
        return popularity - liker.gamma * authenticity > 0

    @staticmethod
    def assign_gammas(politicians: Sequence[Politician],
                      config: SimulationConfig) -> Tuple[Politician, ...]:
        """
        Attribue γ selon le mode de la configuration.

        En mode hétérogène, γ suit une normale (gamma_mean, gamma_sd) tronquée
        en 0 par rejet, tirée une fois par politicien dans l'ordre des
        identifiants.

        Args:
            politicians: Politiciens
            config: Configuration de simulation

        Returns:
            Politiciens (copies) triés par identifiant
        """
        ordered = sorted(politicians, key=lambda p: p.id)
        if config.gamma_mode == GammaMode.HOMOGENEOUS:
            return tuple(replace(p, gamma=config.gamma) for p in ordered)

        rng = stream_rng(config.seed, "gamma")
        gammas = np.empty(len(ordered))
        pending = np.arange(len(ordered))
        while pending.size:
            draws = rng.normal(config.gamma_mean, config.gamma_sd, size=pending.size)
            accepted = draws >= 0
            gammas[pending[accepted]] = draws[accepted]
            pending = pending[~accepted]
        return tuple(replace(p, gamma=float(g)) for p, g in zip(ordered, gammas))

    @staticmethod
    def draw_messages(politicians: Sequence[Politician],
                      config: SimulationConfig) -> np.ndarray:
        """
        Tire M messages par émetteur, δ ~ Normal(μ_j, σ_j).

        L'ordre de tirage (émetteur puis message, émetteurs par identifiant)
        est fixe; les tirages ne dépendent pas de γ.

        Returns:
            Matrice (N, M) des positions des messages
        """
        ordered = sorted(politicians, key=lambda p: p.id)
        rng = stream_rng(config.seed, "messages")
        deltas = np.empty((len(ordered), config.messages_per_politician))
        for row, sender in enumerate(ordered):
            deltas[row] = rng.normal(sender.mu, sender.sigma, size=config.messages_per_politician)
        return deltas

    @staticmethod
    def count_likes(politicians: Sequence[Politician], front_runner_mu: np.ndarray,
                    deltas: np.ndarray, omega: float) -> np.ndarray:
        """
        Applique la décision de like à tous les couples (liker, message).

        Args:
            politicians: Politiciens triés par identifiant (γ assigné)
            front_runner_mu: μ^f de la coalition de chaque liker
            deltas: Messages (N, M) par émetteur
            omega: Poids du signal

        Returns:
            Matrice (N, N) d'entiers, diagonale nulle
        """
        mu = np.array([p.mu for p in politicians])[:, None]
        sigma = np.array([p.sigma for p in politicians])[:, None]
        gamma = np.array([p.gamma for p in politicians])[:, None]
        target = np.asarray(front_runner_mu, dtype=float)[:, None]

        n = len(politicians)
        counts = np.zeros((n, n), dtype=np.int64)
        for sender in range(n):
            delta = deltas[sender][None, :]
            updated = mu / (1.0 + omega) + (omega / (1.0 + omega)) * delta
            popularity = np.abs(mu - target) - np.abs(updated - target)
            authenticity = np.abs(delta - mu) / sigma
            counts[:, sender] = np.count_nonzero(popularity - gamma * authenticity > 0, axis=1)
        np.fill_diagonal(counts, 0)
        return counts

    @staticmethod
    def simulate(politicians: Sequence[Politician],
                 electorate: Electorate,
                 config: SimulationConfig,
                 n_coalitions: Optional[int] = None) -> LikeMatrix:
        """
        Simule la matrice des likes.

        Le front-runner de chaque coalition est calculé une fois à partir des
        idéologies a priori; les croyances ne persistent pas d'un message à
        l'autre.

        Args:
            politicians: Politiciens avec coalition assignée
            electorate: Électorat
            config: Configuration de simulation

        Returns:
            LikeMatrix (identifiants triés)
        """
        outcome = SpatialEngine.compete(politicians, electorate, n_coalitions)
        actors = SignalingEngine.assign_gammas(politicians, config)
        deltas = SignalingEngine.draw_messages(actors, config)
        targets = np.array([outcome.front_runner_mu(p.id) for p in actors])

        counts = SignalingEngine.count_likes(actors, targets, deltas, config.omega)
        logger.info("Simulation: %d politiciens, %d messages chacun, %d likes",
                    len(actors), config.messages_per_politician, int(counts.sum()))
        return LikeMatrix(ids=tuple(p.id for p in actors), counts=counts, politicians=actors)

    @staticmethod
    def gamma_sweep(politicians: Sequence[Politician],
                    electorate: Electorate,
                    config: SimulationConfig,
                    gammas: Sequence[float] = DEFAULT_GAMMA_SWEEP,
                    n_coalitions: Optional[int] = None) -> Dict[float, LikeMatrix]:
        """
        Simulations à γ homogène avec les mêmes tirages de messages.

        Returns:
            Dict γ -> LikeMatrix, dans l'ordre du balayage
        """
        results = {}
        for gamma in gammas:
            point = replace(config, gamma_mode=GammaMode.HOMOGENEOUS, gamma=float(gamma))
            results[float(gamma)] = SignalingEngine.simulate(
                politicians, electorate, point, n_coalitions
            )
        return results

    @staticmethod
    def dyad_table(like_matrix: LikeMatrix) -> pd.DataFrame:
        """
        Table des dyades ordonnées (y compris i = j) pour la régression simulée.

        Returns:
            DataFrame `liker_id,sender_id,likes,opponents`
        """
        coalition = {p.id: p.coalition for p in like_matrix.politicians}
        frame = like_matrix.to_frame()
        frame["opponents"] = [
            int(coalition[i] != coalition[j])
            for i, j in zip(frame["liker_id"], frame["sender_id"])
        ]
        return frame

    @staticmethod
    def cross_coalition_share(like_matrix: LikeMatrix) -> float:
        """Part des likes donnés à des opposants (0 s'il n'y a aucun like)."""
        dyads = SignalingEngine.dyad_table(like_matrix)
        total = dyads["likes"].sum()
        if total == 0:
            return 0.0
        return float(dyads.loc[dyads["opponents"] == 1, "likes"].sum() / total)
