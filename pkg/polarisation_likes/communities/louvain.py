"""
Détection de communautés par la méthode de Louvain.
"""

import networkx as nx

from .base_method import BaseCommunityMethod, Partition

# Gain minimal de modularité entre deux niveaux
LOUVAIN_THRESHOLD = 1e-12


class Louvain(BaseCommunityMethod):
    """Optimisation gloutonne de la modularité (balayage des nœuds + agrégation)."""

    @staticmethod
    def detect(graph: nx.Graph, seed: int = 0) -> Partition:
        """
        Partition de Louvain, déterministe pour une graine donnée.

        Args:
            graph: Graphe non orienté avec au moins une arête
            seed: Graine de l'ordre de visite des nœuds

        Returns:
            Partition nœud -> communauté
        """
        binary = Louvain._binarize(graph)
        Louvain._require_edges(binary)
        # gains égaux: la règle de networkx (ordre de visite tiré de la graine), pas le plus petit label
        communities =nx.community.louvain_communities(
            binary, seed=seed, threshold=LOUVAIN_THRESHOLD
        )
        partition = Louvain._to_partition(binary, communities)

        singletons = {node: index for index, node in enumerate(binary.nodes())}
        if Louvain.modularity(binary, partition) < Louvain.modularity(binary, singletons):
            return singletons
        return partition
