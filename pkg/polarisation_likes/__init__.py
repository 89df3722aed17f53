"""
Package de simulation et d'analyse de la polarisation des « likes » entre
politiciens.

Ce package contient le modèle spatial de compétition dans les coalitions, la
simulation des signaux et des likes, la construction des réseaux de
corrélation et leur modularité, ainsi que les régressions en panel.
"""

from polarisation_likes.enums import (
    ElectorateKind, GammaMode, CommunityMethod, DependentVariable,
    RegressionTerm, CovarianceType, GroupFilter, Metric,
)
from polarisation_likes.spatial import Politician, Electorate, CompetitionOutcome, SpatialEngine
from polarisation_likes.signaling import Message, SimulationConfig, LikeMatrix, SignalingEngine
from polarisation_likes.networks import NetworkEngine
from polarisation_likes.econometrics import PanelRow, RegressionResult, RegressionEngine, TABLE_SPECIFICATIONS
from polarisation_likes.ideology import SurveyResponse, IdeologyEstimate, IdeologyEstimator
from polarisation_likes.ingest import PeriodSpec, SummaryBlock, InteractionPanel, PanelLoader
from polarisation_likes.calibration import default_politicians, default_electorates
from polarisation_likes.demos import create_like_matrix, quick_demo, sweep_demo, median_voter_demo

__all__ = [
    'ElectorateKind',
    'GammaMode',
    'CommunityMethod',
    'DependentVariable',
    'RegressionTerm',
    'CovarianceType',
    'GroupFilter',
    'Metric',
    'Politician',
    'Electorate',
    'CompetitionOutcome',
    'SpatialEngine',
    'Message',
    'SimulationConfig',
    'LikeMatrix',
    'SignalingEngine',
    'NetworkEngine',
    'PanelRow',
    'RegressionResult',
    'RegressionEngine',
    'TABLE_SPECIFICATIONS',
    'SurveyResponse',
    'IdeologyEstimate',
    'IdeologyEstimator',
    'PeriodSpec',
    'SummaryBlock',
    'InteractionPanel',
    'PanelLoader',
    'default_politicians',
    'default_electorates',
    'create_like_matrix',
    'quick_demo',
    'sweep_demo',
    'median_voter_demo',
]
