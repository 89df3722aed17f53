"""
Hiérarchie d'exceptions du package.

Chaque famille porte le code de sortie utilisé par la ligne de commande.
"""


class PolarisationError(Exception):
    """Classe de base pour toutes les erreurs du package."""

    exit_code = 5


class SchemaError(PolarisationError):
    """Fichier d'entrée mal formé (colonne manquante, valeur hors échelle)."""

    exit_code = 2

    def __init__(self, message: str, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")


class UnknownPolitician(SchemaError):
    """Identifiant absent du fichier des coalitions."""


class DuplicateDyad(SchemaError):
    """Dyade (ou paire répondant/politicien) présente deux fois."""


class InvalidShare(SchemaError):
    """Parts d'électorat négatives ou supérieures à 1."""


class EstimationError(PolarisationError):
    """Échec d'une estimation ou d'un calcul numérique."""

    exit_code = 3


class InsufficientData(EstimationError):
    """Moins d'observations utilisables que le minimum requis."""


class DegenerateRegressor(EstimationError):
    """Régresseur sans variance parmi les lignes utilisables."""


class DegenerateRange(EstimationError):
    """Tous les coefficients sont égaux, la remise à l'échelle est impossible."""


class RankDeficient(EstimationError):
    """Matrice de design de rang incomplet."""

    def __init__(self, column: int, name: str = None):
        self.column = column
        self.name = name
        label = name if name is not None else f"#{column}"
        super().__init__(f"colonne colinéaire avec les précédentes: {label} (index {column})")


class NoVariation(EstimationError):
    """Variable binaire constante."""


class ZeroVariance(EstimationError):
    """Vecteur de variance nulle."""


class EmptyGraph(EstimationError):
    """Graphe sans arête."""


class EmptyGroup(EstimationError):
    """Sous-ensemble de dyades vide."""


class EmptyCoalition(EstimationError):
    """Coalition sans membre."""


class ZeroWeight(EstimationError):
    """Groupe d'électeurs de poids nul."""


class ConfigError(PolarisationError):
    """Configuration invalide."""

    exit_code = 4


class ConstantProfileWarning(UserWarning):
    """Profil d'interactions constant: le nœud est conservé sans arête."""
