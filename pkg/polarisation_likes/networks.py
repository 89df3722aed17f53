"""
Réseaux de corrélation et mesure de la polarisation par la modularité.

Une matrice d'interactions N×N (likes ou votes) est transformée en réseau:
deux politiciens sont reliés si leurs profils d'interaction sont corrélés
au-delà d'un seuil θ. La polarisation est mesurée par la modularité de la
partition en communautés détectée sur ce réseau.
"""

import logging
import warnings
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from polarisation_likes.communities import BaseCommunityMethod, Partition, get_community_function
from polarisation_likes.enums import CommunityMethod
from polarisation_likes.errors import ConstantProfileWarning

logger = logging.getLogger(__name__)

DEFAULT_THETA = 0.1


class NetworkEngine:
    """
    Moteur de construction et d'analyse des réseaux de corrélation.
    """

    @staticmethod
    def correlation_network(matrix, theta: float = DEFAULT_THETA,
                            labels: Optional[Sequence[Hashable]] = None) -> nx.Graph:
        """
        Construit le réseau de corrélation seuillé d'une matrice d'interactions.

        Pour chaque paire (i, j), la corrélation de Pearson est calculée entre
        les lignes i et j privées des positions i et j.

        Args:
            matrix: Matrice carrée N×N (N >= 3)
            theta: Seuil de corrélation dans [-1, 1]
            labels: Noms des nœuds (0..N-1 par défaut)

        Returns:
            Graphe non orienté, arêtes pondérées par r (r >= theta)
        """
        data = np.asarray(matrix, dtype=float)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(f"matrice carrée attendue, reçu {data.shape}")
        n = data.shape[0]
        if n < 3:
            raise ValueError(f"au moins 3 nœuds requis, reçu {n}")
        if not -1.0 <= theta <= 1.0:
            raise ValueError(f"theta doit être dans [-1, 1]: {theta}")
        if not np.all(np.isfinite(data)):
            raise ValueError("la matrice contient des valeurs non finies")

        nodes = list(range(n)) if labels is None else list(labels)
        if len(nodes) != n or len(set(nodes)) != n:
            raise ValueError("les étiquettes doivent être uniques et au nombre de N")

        graph = nx.Graph()
        graph.add_nodes_from(nodes)

        constant = np.ptp(data, axis=1) == 0
        for index in np.flatnonzero(constant):
            warnings.warn(f"profil constant pour {nodes[index]}: aucune arête",
                          ConstantProfileWarning, stacklevel=2)

        # profils constants une fois les positions i et j retirées
        flat_pairs = {}
        keep = np.ones(n, dtype=bool)
        for i in range(n):
            if constant[i]:
                continue
            for j in range(i + 1, n):
                if constant[j]:
                    continue
                keep[[i, j]] = False
                x, y = data[i, keep], data[j, keep]
                keep[[i, j]] = True
                for index, profile in ((i, x), (j, y)):
                    if np.ptp(profile) == 0:
                        flat_pairs[index] = flat_pairs.get(index, 0) + 1
                r = NetworkEngine._pearson(x, y)
                if r is not None and r >= theta:
                    graph.add_edge(nodes[i], nodes[j], weight=r)

        for index, count in flat_pairs.items():
            warnings.warn(f"profil de {nodes[index]} constant hors diagonale: aucune arête "
                          f"avec {count} politicien(s)", ConstantProfileWarning, stacklevel=2)

        logger.debug("Réseau de corrélation: %d nœuds, %d arêtes (θ=%.3f)",
                     n, graph.number_of_edges(), theta)
        return graph

    @staticmethod
    def _pearson(x: np.ndarray, y: np.ndarray) -> Optional[float]:
        """Corrélation de Pearson, None si un des profils est constant."""
        if np.ptp(x) == 0 or np.ptp(y) == 0:
            return None
        r = float(np.corrcoef(x, y)[0, 1])
        return float(np.clip(r, -1.0, 1.0))

    @staticmethod
    def modularity(graph: nx.Graph, partition: Partition) -> float:
        """
        Modularité Q de la partition sur l'adjacence binarisée.

        Args:
            graph: Graphe non orienté avec au moins une arête
            partition: Communauté de chaque nœud

        Returns:
            Q dans [-1, 1]
        """
        return BaseCommunityMethod.modularity(graph, partition)

    @staticmethod
    def detect(graph: nx.Graph, method=CommunityMethod.LOUVAIN, seed: int = 0) -> Partition:
        """
        Détecte les communautés avec la méthode choisie.

        Args:
            graph: Graphe non orienté
            method: CommunityMethod ou son nom
            seed: Graine (Louvain)

        Returns:
            Partition nœud -> communauté
        """
        method = CommunityMethod(method)
        return get_community_function(method.value)(graph, seed=seed)

    @staticmethod
    def analyze_matrix(matrix, theta: float = DEFAULT_THETA,
                       method=CommunityMethod.LOUVAIN, seed: int = 0,
                       labels: Optional[Sequence[Hashable]] = None
                       ) -> Tuple[nx.Graph, Partition, float]:
        """
        Réseau, communautés et modularité d'une matrice d'interactions.

        Returns:
            (graphe, partition, Q)
        """
        graph = NetworkEngine.correlation_network(matrix, theta, labels)
        partition = NetworkEngine.detect(graph, method, seed)
        return graph, partition, NetworkEngine.modularity(graph, partition)

    @staticmethod
    def modularity_series(matrices: Sequence[Tuple[str, object]],
                          theta: float = DEFAULT_THETA,
                          method=CommunityMethod.LOUVAIN,
                          seed: int = 0,
                          labels: Optional[Sequence[Hashable]] = None) -> List[Tuple[str, float]]:
        """
        Modularité de chaque matrice d'une série (périodes ou points de balayage).

        Args:
            matrices: Liste de (étiquette, matrice)
            theta: Seuil de corrélation
            method: Méthode de détection
            seed: Graine commune à toutes les périodes

        Returns:
            Liste de (étiquette, Q) dans l'ordre d'entrée
        """
        series = []
        for label, matrix in matrices:
            _, _, q = NetworkEngine.analyze_matrix(matrix, theta, method, seed, labels)
            logger.info("Modularité %s: Q=%.4f", label, q)
            series.append((label, q))
        return series

    @staticmethod
    def annotate(graph: nx.Graph, partition: Optional[Partition] = None,
                 coalitions: Optional[Dict[Hashable, int]] = None) -> nx.Graph:
        """
        Copie du graphe avec les attributs de nœud `community` et `coalition`.

        Args:
            graph: Graphe à annoter
            partition: Communautés détectées
            coalitions: Coalition de chaque nœud

        Returns:
            Nouveau graphe annoté
        """
        annotated = graph.copy()
        for node in annotated.nodes():
            if partition is not None:
                annotated.nodes[node]["community"] = int(partition[node])
            if coalitions is not None and node in coalitions:
                annotated.nodes[node]["coalition"] = coalitions[node]
        return annotated
