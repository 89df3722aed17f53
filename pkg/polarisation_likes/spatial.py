"""
Modèle spatial de compétition électorale.

Ce module implémente l'électorat (groupes d'électeurs sur l'axe 1..5), la
distance pondérée politicien/groupe, la compétition par proximité à
l'intérieur de chaque coalition, la sélection du candidat de tête
(front-runner) et l'expérience de l'électeur médian.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from polarisation_likes.enums import ElectorateKind
from polarisation_likes.errors import EmptyCoalition, InvalidShare, ZeroWeight

logger = logging.getLogger(__name__)

IDEOLOGY_BINS = (1.0, 2.0, 3.0, 4.0, 5.0)
CONTINUOUS_GRID_POINTS = 1001
WEIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Politician:
    """Politicien: idéologie (μ, σ), coalition et authenticité γ."""

    id: str
    mu: float
    sigma: float
    coalition: int = 0
    gamma: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma doit être > 0 pour {self.id}: {self.sigma}")
        if self.gamma < 0:
            raise ValueError(f"gamma doit être >= 0 pour {self.id}: {self.gamma}")


@dataclass(frozen=True)
class Electorate:
    """Électorat fragmenté en K groupes (idéologie i_k, poids w_k)."""

    groups: Tuple[Tuple[float, float], ...]
    kind: ElectorateKind = ElectorateKind.EMPIRICAL_DISCRETE

    def __post_init__(self):
        if not self.groups:
            raise InvalidShare("électorat vide")
        ideologies = [g[0] for g in self.groups]
        weights = [g[1] for g in self.groups]
        if any(not (0.0 < w <= 1.0) for w in weights):
            raise InvalidShare(f"poids hors de (0, 1]: {weights}")
        if abs(math.fsum(weights) - 1.0) > WEIGHT_TOLERANCE:
            raise InvalidShare(f"les poids somment à {math.fsum(weights)}")
        if any(b <= a for a, b in zip(ideologies, ideologies[1:])):
            raise InvalidShare("les idéologies doivent être strictement croissantes")

    @property
    def ideologies(self) -> np.ndarray:
        return np.array([g[0] for g in self.groups], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array([g[1] for g in self.groups], dtype=float)


@dataclass(frozen=True)
class CompetitionOutcome:
    """Résultat de la compétition: votes v_i et front-runner de chaque coalition."""

    votes: Dict[str, float]
    front_runner: Dict[int, Tuple[str, float]]
    coalition_of: Dict[str, int] = field(default_factory=dict)

    def front_runner_mu(self, politician_id: str) -> float:
        """Idéologie du front-runner de la coalition du politicien."""
        return self.front_runner[self.coalition_of[politician_id]][1]


class SpatialEngine:
    """
    Moteur de compétition spatiale à l'intérieur des coalitions.
    """

    @staticmethod
    def distance(politician: Politician, group: Tuple[float, float]) -> float:
        """
        Distance signée d_{i,k} = (μ_i - i_k) / w_k.

        Une valeur positive (négative) indique que le politicien est à gauche
        (droite) du groupe; le facteur 1/w_k pénalise les petits groupes.

        Args:
            politician: Politicien i
            group: Tuple (idéologie i_k, poids w_k)

        Returns:
            Distance signée
        """
        ideology, weight = group
        if weight == 0:
            raise ZeroWeight(f"groupe d'idéologie {ideology} de poids nul")
        return (politician.mu - ideology) / weight

    @staticmethod
    def _coalition_members(politicians: Sequence[Politician],
                           n_coalitions: Optional[int] = None) -> Dict[int, List[Politician]]:
        """Regroupe les politiciens par coalition, triés par identifiant."""
        if not politicians:
            raise EmptyCoalition("aucun politicien")
        if n_coalitions is None:
            n_coalitions = max(p.coalition for p in politicians) + 1
        members = {c: [] for c in range(n_coalitions)}
        for politician in politicians:
            if politician.coalition not in members:
                raise EmptyCoalition(
                    f"coalition {politician.coalition} hors de 0..{n_coalitions - 1}"
                )
            members[politician.coalition].append(politician)
        for coalition, group in members.items():
            if not group:
                raise EmptyCoalition(f"la coalition {coalition} n'a aucun membre")
            group.sort(key=lambda p: p.id)
        return members

    @staticmethod
    def compete(politicians: Sequence[Politician],
                electorate: Electorate,
                n_coalitions: Optional[int] = None) -> CompetitionOutcome:
        """
        Compétition par proximité dans chaque coalition.

        Chaque groupe k attribue tout son poids w_k, dans chaque coalition, au
        membre qui minimise |d_{i,k}|. Le front-runner est le membre qui
        maximise v_i. Les égalités sont tranchées par le plus petit identifiant.

        Args:
            politicians: Politiciens avec coalition assignée
            electorate: Électorat valide
            n_coalitions: Nombre de coalitions attendu (déduit sinon)

        Returns:
            CompetitionOutcome
        """
        members = SpatialEngine._coalition_members(politicians, n_coalitions)
        ideologies = electorate.ideologies
        weights = electorate.weights

        votes: Dict[str, float] = {}
        front_runner: Dict[int, Tuple[str, float]] = {}
        coalition_of: Dict[str, int] = {}

        for coalition, group in members.items():
            mus = np.array([p.mu for p in group])
            # |d_{i,k}| pour chaque membre (lignes) et chaque groupe (colonnes)
            distances = np.abs(mus[:, None] - ideologies[None, :]) / weights[None, :]
            winners = np.argmin(distances, axis=0)
            coalition_votes = np.zeros(len(group))
            np.add.at(coalition_votes, winners, weights)

            for politician, v in zip(group, coalition_votes):
                votes[politician.id] = float(v)
                coalition_of[politician.id] = coalition

            leader = group[int(np.argmax(coalition_votes))]
            front_runner[coalition] = (leader.id, leader.mu)

        logger.debug("Front-runners: %s", front_runner)
        return CompetitionOutcome(votes=votes, front_runner=front_runner,
                                  coalition_of=coalition_of)

    @staticmethod
    def target_ideology(politicians: Sequence[Politician],
                        electorate: Electorate,
                        n_coalitions: Optional[int] = None) -> Dict[str, float]:
        """
        Idéologie cible de chaque politicien: celle du front-runner de sa coalition.

        Args:
            politicians: Politiciens avec coalition assignée
            electorate: Électorat valide
            n_coalitions: Nombre de coalitions attendu

        Returns:
            Dict politician_id -> idéologie cible
        """
        outcome = SpatialEngine.compete(politicians, electorate, n_coalitions)
        return {p.id: outcome.front_runner_mu(p.id) for p in politicians}

    @staticmethod
    def target_table(politicians: Sequence[Politician],
                     electorates: Dict[str, Electorate],
                     n_coalitions: Optional[int] = None) -> List[Dict[str, float]]:
        """
        Tableau des idéologies cibles sous plusieurs électorats.

        Args:
            politicians: Politiciens
            electorates: Dict nom -> électorat

        Returns:
            Une ligne par politicien (politician_id, mu, target_<nom>...)
        """
        targets = {
            name: SpatialEngine.target_ideology(politicians, electorate, n_coalitions)
            for name, electorate in electorates.items()
        }
        rows = []
        for politician in sorted(politicians, key=lambda p: p.id):
            row = {"politician_id": politician.id, "mu": politician.mu,
                   "coalition": politician.coalition}
            for name in electorates:
                row[f"target_{name}"] = targets[name][politician.id]
            rows.append(row)
        return rows

    @staticmethod
    def mean_target_distance(targets: Dict[str, float], center: float = 3.0) -> float:
        """Moyenne de |cible - centre| sur les politiciens."""
        return float(np.mean([abs(t - center) for t in targets.values()]))

    @staticmethod
    def make_electorate(kind, params: dict) -> Electorate:
        """
        Construit un électorat.

        Args:
            kind: ElectorateKind (ou sa valeur)
            params: Pour empirical_discrete: 'shares' (5 parts) et 'null_share';
                pour les électorats normaux: 'mean', 'std' et, en option,
                'grid_points' pour le cas continu

        Returns:
            Electorate normalisé
        """
        kind = ElectorateKind(kind)
        if kind == ElectorateKind.EMPIRICAL_DISCRETE:
            return SpatialEngine._empirical_electorate(
                params["shares"], params.get("null_share", 0.0)
            )
        mean = float(params["mean"])
        std = float(params["std"])
        if std < 0:
            raise InvalidShare(f"écart-type négatif: {std}")
        if kind == ElectorateKind.NORMAL_DISCRETE:
            return SpatialEngine._normal_discrete_electorate(mean, std)
        grid_points = int(params.get("grid_points", CONTINUOUS_GRID_POINTS))
        return SpatialEngine._normal_continuous_electorate(mean, std, grid_points)

    @staticmethod
    def _empirical_electorate(shares: Sequence[float], null_share: float) -> Electorate:
        """Répartit uniformément les réponses nulles sur les 5 groupes."""
        shares = [float(s) for s in shares]
        if len(shares) != len(IDEOLOGY_BINS):
            raise InvalidShare(f"{len(IDEOLOGY_BINS)} parts attendues, {len(shares)} reçues")
        values = shares + [float(null_share)]
        if any(s < 0 or s > 1 for s in values):
            raise InvalidShare(f"parts hors de [0, 1]: {values}")
        if math.fsum(values) > 1 + WEIGHT_TOLERANCE:
            raise InvalidShare(f"les parts dépassent 1: {math.fsum(values)}")

        adjusted = np.array(shares) + null_share / len(IDEOLOGY_BINS)
        total = adjusted.sum()
        if total <= 0:
            raise InvalidShare("toutes les parts sont nulles")
        weights = adjusted / total
        return SpatialEngine._from_weights(IDEOLOGY_BINS, weights,
                                           ElectorateKind.EMPIRICAL_DISCRETE)

    @staticmethod
    def _normal_discrete_electorate(mean: float, std: float) -> Electorate:
        """Masse normale sur des intervalles unitaires centrés sur 1..5."""
        bins = np.array(IDEOLOGY_BINS)
        if std == 0:
            nearest = int(np.argmin(np.abs(bins - mean)))
            return Electorate(groups=((float(bins[nearest]), 1.0),),
                              kind=ElectorateKind.NORMAL_DISCRETE)
        upper = norm.cdf(bins + 0.5, loc=mean, scale=std)
        lower = norm.cdf(bins - 0.5, loc=mean, scale=std)
        mass = upper - lower
        if mass.sum() <= 0:
            nearest = int(np.argmin(np.abs(bins - mean)))
            mass = np.zeros_like(bins)
            mass[nearest] = 1.0
        return SpatialEngine._from_weights(bins, mass / mass.sum(),
                                           ElectorateKind.NORMAL_DISCRETE)

    @staticmethod
    def _normal_continuous_electorate(mean: float, std: float, grid_points: int) -> Electorate:
        """Densité normale sur une grille uniforme de [1, 5]."""
        grid = np.linspace(IDEOLOGY_BINS[0], IDEOLOGY_BINS[-1], grid_points)
        if std == 0:
            nearest = int(np.argmin(np.abs(grid - mean)))
            return Electorate(groups=((float(grid[nearest]), 1.0),),
                              kind=ElectorateKind.NORMAL_CONTINUOUS)
        density = norm.pdf(grid, loc=mean, scale=std)
        return SpatialEngine._from_weights(grid, density / density.sum(),
                                           ElectorateKind.NORMAL_CONTINUOUS)

    @staticmethod
    def _from_weights(ideologies, weights, kind: ElectorateKind) -> Electorate:
        """Écarte les groupes de poids nul puis renormalise."""
        weights = np.asarray(weights, dtype=float)
        keep = weights > 0
        kept = weights[keep] / weights[keep].sum()
        groups = tuple(
            (float(i), float(w)) for i, w in zip(np.asarray(ideologies)[keep], kept)
        )
        return Electorate(groups=groups, kind=kind)

    @staticmethod
    def electorate_moments(electorate: Electorate) -> Tuple[float, float]:
        """
        Moyenne et écart-type (population) de l'idéologie des électeurs.

        Returns:
            Tuple (moyenne, écart-type)
        """
        x = electorate.ideologies
        w = electorate.weights
        mean = float(np.dot(w, x))
        std = float(np.sqrt(np.dot(w, (x - mean) ** 2)))
        return mean, std

    @staticmethod
    def assign_coalitions(politicians: Sequence[Politician],
                          n_coalitions: int = 3) -> List[Politician]:
        """
        Répartit les politiciens en coalitions par quantiles de μ.

        La coalition 0 regroupe les μ les plus faibles (droite).

        Args:
            politicians: Politiciens
            n_coalitions: Nombre de coalitions (3 = terciles)

        Returns:
            Nouvelle liste de politiciens, dans l'ordre d'entrée
        """
        if n_coalitions < 1 or n_coalitions > len(politicians):
            raise EmptyCoalition(
                f"{n_coalitions} coalitions pour {len(politicians)} politiciens"
            )
        ordered = sorted(politicians, key=lambda p: (p.mu, p.id))
        coalition_of = {}
        for coalition, chunk in enumerate(np.array_split(np.arange(len(ordered)), n_coalitions)):
            for index in chunk:
                coalition_of[ordered[index].id] = coalition
        return [replace(p, coalition=coalition_of[p.id]) for p in politicians]
