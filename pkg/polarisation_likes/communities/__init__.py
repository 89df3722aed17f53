"""
Package des méthodes de détection de communautés.

Ce package contient les méthodes utilisées pour mesurer la polarisation des
réseaux d'interactions par la modularité.
"""

from .base_method import BaseCommunityMethod, Partition
from .louvain import Louvain
from .edge_betweenness import EdgeBetweenness

# Registre des méthodes disponibles
COMMUNITY_REGISTRY = {
    "louvain": Louvain.detect,
    "edge_betweenness": EdgeBetweenness.detect,
}


def get_community_function(method: str):
    """
    Retourne la fonction de détection correspondant à la méthode.

    Args:
        method: Nom de la méthode (valeur de CommunityMethod)

    Returns:
        Fonction de détection appropriée
    """
    try:
        return COMMUNITY_REGISTRY[method]
    except KeyError:
        raise ValueError(f"méthode de détection inconnue: {method}") from None


__all__ = [
    'BaseCommunityMethod', 'Partition',
    'Louvain', 'EdgeBetweenness',
    'get_community_function',
    'COMMUNITY_REGISTRY',
]
