"""
Calibration par défaut du modèle.

28 politiciens (μ sur l'axe 1 = droite .. 5 = gauche, σ > 0) et parts
d'électeurs par groupe idéologique avec une part de réponses nulles.
Ces valeurs illustratives remplacent les estimations d'enquête propriétaires;
`estimate-ideology` produit un fichier qui peut les remplacer.
"""

from typing import Dict, List, Optional

from polarisation_likes.enums import ElectorateKind
from polarisation_likes.spatial import Electorate, Politician, SpatialEngine

# (identifiant, μ, σ) triés de droite à gauche
DEFAULT_POLITICIANS = (
    ("P01", 1.00, 0.45), ("P02", 1.10, 0.60), ("P03", 1.20, 0.30),
    ("P04", 1.30, 0.70), ("P05", 1.40, 0.50), ("P06", 1.50, 0.35),
    ("P07", 1.60, 0.65), ("P08", 1.70, 0.40), ("P09", 1.80, 0.55),
    ("P10", 1.90, 0.25),
    ("P11", 2.55, 0.50), ("P12", 2.75, 0.30), ("P13", 2.90, 0.70),
    ("P14", 3.00, 0.45), ("P15", 3.10, 0.60), ("P16", 3.25, 0.35),
    ("P17", 3.40, 0.55), ("P18", 3.50, 0.40), ("P19", 3.70, 0.65),
    ("P20", 4.30, 0.30), ("P21", 4.40, 0.60), ("P22", 4.50, 0.45),
    ("P23", 4.60, 0.70), ("P24", 4.70, 0.35), ("P25", 4.75, 0.55),
    ("P26", 4.80, 0.40), ("P27", 4.90, 0.65), ("P28", 5.00, 0.50),
)

# Parts observées des groupes 1..5 et part des réponses nulles
DEFAULT_SHARES = (0.05, 0.07, 0.18, 0.08, 0.07)
DEFAULT_NULL_SHARE = 0.55

DEFAULT_N_COALITIONS = 3


def default_politicians(n_coalitions: int = DEFAULT_N_COALITIONS,
                        gammas: Optional[Dict[str, float]] = None) -> List[Politician]:
    """
    Politiciens calibrés, répartis en coalitions par quantiles de μ.

    Args:
        n_coalitions: Nombre de coalitions
        gammas: Authenticité par identifiant (0 par défaut)

    Returns:
        Liste de Politician
    """
    gammas = gammas or {}
    politicians = [
        Politician(id=pid, mu=mu, sigma=sigma, gamma=gammas.get(pid, 0.0))
        for pid, mu, sigma in DEFAULT_POLITICIANS
    ]
    return SpatialEngine.assign_coalitions(politicians, n_coalitions)


def default_electorates() -> Dict[str, Electorate]:
    """
    Électorat empirique et ses deux versions normales de mêmes moments.

    Returns:
        Dict valeur d'ElectorateKind -> Electorate
    """
    empirical = SpatialEngine.make_electorate(
        ElectorateKind.EMPIRICAL_DISCRETE,
        {"shares": DEFAULT_SHARES, "null_share": DEFAULT_NULL_SHARE},
    )
    mean, std = SpatialEngine.electorate_moments(empirical)
    return {
        ElectorateKind.EMPIRICAL_DISCRETE.value: empirical,
        ElectorateKind.NORMAL_DISCRETE.value: SpatialEngine.make_electorate(
            ElectorateKind.NORMAL_DISCRETE, {"mean": mean, "std": std}
        ),
        ElectorateKind.NORMAL_CONTINUOUS.value: SpatialEngine.make_electorate(
            ElectorateKind.NORMAL_CONTINUOUS, {"mean": mean, "std": std}
        ),
    }
