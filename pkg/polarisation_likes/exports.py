"""
Écriture des résultats: CSV, YAML, texte, GraphML et DOT.

Chaque fichier est d'abord écrit dans un fichier temporaire du même dossier
puis renommé, de sorte qu'un fichier de sortie est soit complet soit absent.
"""

import logging
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable

import networkx as nx
import pandas as pd
import yaml

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"


@contextmanager
def atomic_path(path):
    """
    Fournit un chemin temporaire renommé vers `path` en cas de succès.

    Args:
        path: Fichier de destination
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    os.close(handle)
    try:
        yield temporary
        os.replace(temporary, target)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise
    logger.debug("Écrit: %s", target)


def write_csv(frame: pd.DataFrame, path):
    """Écrit une table CSV sans index, flottants en notation compacte."""
    with atomic_path(path) as temporary:
        frame.to_csv(temporary, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_lines(lines: Iterable[str], path):
    """Écrit un fichier texte, une entrée par ligne."""
    with atomic_path(path) as temporary:
        with open(temporary, "w", encoding="utf-8") as f:
            for line in lines:
                f.write(f"{line}\n")


def write_yaml(data: dict, path):
    """Écrit un dictionnaire en YAML lisible (ordre des clés conservé)."""
    with atomic_path(path) as temporary:
        with open(temporary, "w", encoding="utf-8") as f:
            yaml.dump(data, f, default_flow_style=False, indent=2, allow_unicode=True, sort_keys=False)


def read_yaml(path) -> dict:
    """Lit un fichier YAML (dictionnaire vide si le fichier est vide)."""
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def write_graphml(graph: nx.Graph, path):
    """Exporte le graphe en GraphML (attributs de nœuds et poids conservés)."""
    with atomic_path(path) as temporary:
        nx.write_graphml(graph, temporary)


def write_dot(graph: nx.Graph, path):
    """Exporte le graphe au format DOT via pydot."""
    dot = nx.nx_pydot.to_pydot(graph)
    with atomic_path(path) as temporary:
        with open(temporary, "w", encoding="utf-8") as f:
            f.write(dot.to_string())
