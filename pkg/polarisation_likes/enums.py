"""
Énumérations pour les électorats, modes d'authenticité, méthodes de détection
de communautés et termes de régression.
"""

from enum import Enum


class ElectorateKind(Enum):
    """Types d'électorat disponibles"""
    EMPIRICAL_DISCRETE = "empirical_discrete"
    NORMAL_DISCRETE = "normal_discrete"
    NORMAL_CONTINUOUS = "normal_continuous"


class GammaMode(Enum):
    """Modes d'attribution de l'authenticité (γ)"""
    HOMOGENEOUS = "homogeneous"
    HETEROGENEOUS = "heterogeneous"


class CommunityMethod(Enum):
    """Méthodes de détection de communautés"""
    LOUVAIN = "louvain"
    EDGE_BETWEENNESS = "edge_betweenness"


class DependentVariable(Enum):
    """Variables dépendantes de la régression en panel"""
    LIKES = "likes"
    VOTES = "votes"


class RegressionTerm(Enum):
    """Termes disponibles dans une spécification de régression"""
    OPPONENTS = "opponents"
    FOLLOWING = "following"
    LIKES = "likes"
    LIKES_SQ = "likes_sq"
    LIKES_X_OPP = "likes_x_opp"
    LIKES_SQ_X_OPP = "likes_sq_x_opp"


class CovarianceType(Enum):
    """Estimateurs de la variance des coefficients"""
    CLASSICAL = "classical"
    ROBUST = "robust"


class GroupFilter(Enum):
    """Sous-ensembles de dyades pour les statistiques descriptives"""
    ALL = "all"
    OPPONENTS = "opponents"


class Metric(Enum):
    """Métriques résumées par période"""
    LIKES = "likes"
    VOTES = "votes"
