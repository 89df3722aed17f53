"""
Flux aléatoires reproductibles.

Toute l'aléa d'une exécution provient d'une graine racine; chaque module tire
d'un sous-flux nommé, de sorte qu'ajouter un flux ne perturbe jamais les autres.
"""

import hashlib

import numpy as np


def derive_seed(root_seed: int, stream: str) -> int:
    """
    Dérive une graine 32 bits à partir de la graine racine et d'un nom de flux.

    Args:
        root_seed: Graine racine de l'exécution
        stream: Nom du sous-flux ("gamma", "messages", "louvain", ...)

    Returns:
        Graine entière dans [0, 2**32 - 1)
    """
    combined = f"{int(root_seed)}-{stream}"
    return int(hashlib.sha256(combined.encode("utf-8")).hexdigest(), 16) % (2**32 - 1)


def stream_rng(root_seed: int, stream: str) -> np.random.Generator:
    """Générateur numpy pour le sous-flux nommé."""
    return np.random.default_rng(derive_seed(root_seed, stream))
