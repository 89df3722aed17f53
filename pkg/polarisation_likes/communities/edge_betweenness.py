"""
Détection de communautés par retrait des arêtes de plus forte intermédiarité
(Girvan–Newman).
"""

import networkx as nx

from .base_method import BaseCommunityMethod, Partition


class EdgeBetweenness(BaseCommunityMethod):
    """Girvan–Newman: garde la partition de modularité maximale."""

    @staticmethod
    def detect(graph: nx.Graph, seed: int = 0) -> Partition:
        """
        Retire successivement l'arête de plus forte intermédiarité (chemins
        non pondérés) et retient les composantes connexes de Q maximal.

        Args:
            graph: Graphe non orienté avec au moins une arête
            seed: Ignorée (méthode déterministe)

        Returns:
            Partition nœud -> communauté
        """
        binary = EdgeBetweenness._binarize(graph)
        EdgeBetweenness._require_edges(binary)

        best = EdgeBetweenness._to_partition(binary, nx.connected_components(binary))
        best_q = EdgeBetweenness.modularity(binary, best)

        for communities in nx.community.girvan_newman(binary):
            candidate = EdgeBetweenness._to_partition(binary, communities)
            q = EdgeBetweenness.modularity(binary, candidate)
            # Égalité: on garde la partition la moins fragmentée
            if q > best_q + 1e-12:
                best, best_q = candidate, q
        return best
