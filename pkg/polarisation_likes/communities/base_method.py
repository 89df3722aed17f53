"""
Module de base pour les méthodes de détection de communautés.

Ce module contient les fonctionnalités communes à toutes les méthodes:
binarisation du graphe, conversion en partition et calcul de la modularité.
"""

from typing import Dict, Hashable, Iterable, Set

import networkx as nx

from polarisation_likes.errors import EmptyGraph

Partition = Dict[Hashable, int]


class BaseCommunityMethod:
    """Classe de base pour toutes les méthodes de détection."""

    @staticmethod
    def detect(graph: nx.Graph, seed: int = 0) -> Partition:
        """
        Détecte les communautés du graphe.

        Cette méthode doit être implémentée par chaque méthode spécifique.

        Args:
            graph: Graphe non orienté
            seed: Graine pour les méthodes aléatoires

        Returns:
            Partition nœud -> étiquette de communauté
        """
        raise NotImplementedError("Chaque méthode de détection doit implémenter cette méthode")

    @staticmethod
    def _binarize(graph: nx.Graph) -> nx.Graph:
        """
        Copie non pondérée du graphe (a_ij ∈ {0, 1}), sans boucles.

        Args:
            graph: Graphe éventuellement pondéré

        Returns:
            Nouveau graphe avec les mêmes nœuds, dans le même ordre
        """
        binary = nx.Graph()
        binary.add_nodes_from(graph.nodes())
        binary.add_edges_from((u, v) for u, v in graph.edges() if u != v)
        return binary

    @staticmethod
    def _require_edges(graph: nx.Graph):
        """Lève EmptyGraph si le graphe n'a aucune arête."""
        if graph.number_of_edges() == 0:
            raise EmptyGraph("le graphe n'a aucune arête")

    @staticmethod
    def _to_partition(graph: nx.Graph, communities: Iterable[Set[Hashable]]) -> Partition:
        """
        Étiquette les communautés dans l'ordre d'apparition des nœuds.

        Args:
            graph: Graphe de référence (ordre des nœuds)
            communities: Ensembles de nœuds disjoints

        Returns:
            Partition avec étiquettes 0..c-1
        """
        position = {node: index for index, node in enumerate(graph.nodes())}
        ordered = sorted((set(c) for c in communities), key=lambda c: min(position[n] for n in c))
        return {node: label for label, community in enumerate(ordered) for node in community}

    @staticmethod
    def _to_communities(partition: Partition):
        """Partition -> liste d'ensembles de nœuds."""
        groups: Dict[int, Set[Hashable]] = {}
        for node, label in partition.items():
            groups.setdefault(label, set()).add(node)
        return list(groups.values())

    @staticmethod
    def modularity(graph: nx.Graph, partition: Partition) -> float:
        """
        Modularité Q sur l'adjacence binarisée.

        Q = (1/2m)·Σ_{i,j} (a_ij - k_i k_j / 2m)·δ(c_i, c_j)

        Args:
            graph: Graphe non orienté
            partition: Étiquette de communauté de chaque nœud

        Returns:
            Q dans [-1, 1]
        """
        binary = BaseCommunityMethod._binarize(graph)
        BaseCommunityMethod._require_edges(binary)
        missing = set(binary.nodes()) - set(partition)
        if missing:
            raise ValueError(f"nœuds sans communauté: {sorted(map(str, missing))}")
        communities = BaseCommunityMethod._to_communities(
            {node: partition[node] for node in binary.nodes()}
        )
        return float(nx.community.modularity(binary, communities))
