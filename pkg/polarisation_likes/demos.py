"""
Fonctions de démonstration du modèle de likes.
"""

import logging
from typing import Dict, Optional, Sequence

from polarisation_likes.calibration import default_electorates, default_politicians
from polarisation_likes.econometrics import RegressionEngine, RegressionResult
from polarisation_likes.enums import CommunityMethod, ElectorateKind, GammaMode
from polarisation_likes.networks import DEFAULT_THETA, NetworkEngine
from polarisation_likes.signaling import (
    DEFAULT_GAMMA_SWEEP, LikeMatrix, SignalingEngine, SimulationConfig
)
from polarisation_likes.spatial import SpatialEngine

logger = logging.getLogger(__name__)


def create_like_matrix(seed: int = 42,
                       messages: int = 500,
                       omega: float = 1.0,
                       gamma: Optional[float] = None,
                       electorate: str = "empirical_discrete",
                       n_coalitions: int = 3) -> LikeMatrix:
    """
    Simule la matrice des likes du modèle calibré avec des paramètres simples.

    Args:
        seed: Graine racine
        messages: Messages par politicien
        omega: Poids du signal
        gamma: γ homogène (hétérogène, moyenne 0.1 et écart-type 0.1, si None)
        electorate: Type d'électorat ("empirical_discrete", "normal_discrete", "normal_continuous")
        n_coalitions: Nombre de coalitions

    Returns:
        LikeMatrix simulée
    """
    config = SimulationConfig(
        omega=omega,
        messages_per_politician=messages,
        seed=seed,
        gamma_mode=GammaMode.HETEROGENEOUS if gamma is None else GammaMode.HOMOGENEOUS,
        gamma=gamma or 0.0,
    )
    return SignalingEngine.simulate(default_politicians(n_coalitions),
                                    default_electorates()[ElectorateKind(electorate).value],
                                    config, n_coalitions)


def quick_demo(seed: int = 42) -> RegressionResult:
    """Démonstration rapide: simulation hétérogène et régression sur Opponents"""
    like_matrix = create_like_matrix(seed=seed)
    result = RegressionEngine.simulated_regression(SignalingEngine.dyad_table(like_matrix))
    logger.info("β(opponents)=%.3f  se=%.3f  N=%d",
                result.coefficients["opponents"], result.std_errors["opponents"], result.n_obs)
    return result


def sweep_demo(seed: int = 42, gammas: Sequence[float] = DEFAULT_GAMMA_SWEEP,
               method: str = CommunityMethod.LOUVAIN.value) -> Dict[float, float]:
    """Modularité des réseaux simulés le long d'un balayage de γ 📈"""
    politicians = default_politicians()
    sweep = SignalingEngine.gamma_sweep(politicians, default_electorates()["empirical_discrete"],
                                        SimulationConfig(seed=seed), gammas)
    series = NetworkEngine.modularity_series(
        [(gamma, matrix.symmetrized()) for gamma, matrix in sweep.items()],
        DEFAULT_THETA, method, seed, labels=[p.id for p in sorted(politicians, key=lambda p: p.id)],
    )
    return dict(series)


def median_voter_demo() -> Dict[str, float]:
    """Distance moyenne des cibles au centre (3) selon l'électorat"""
    politicians = default_politicians()
    return {
        name: SpatialEngine.mean_target_distance(SpatialEngine.target_ideology(politicians, electorate))
        for name, electorate in default_electorates().items()
    }


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s] %(message)s")
    quick_demo()
    for name, distance in median_voter_demo().items():
        logger.info("Électorat %s: |cible - 3| moyen = %.4f", name, distance)
    for gamma, q in sweep_demo().items():
        logger.info("γ=%.2f  Q=%.4f", gamma, q)
