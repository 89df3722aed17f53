"""
Configuration d'une exécution.

Une configuration est lue depuis un fichier YAML, complétée par les options
de la ligne de commande, validée, puis recopiée telle quelle (valeurs par
défaut comprises, graine explicite) dans `<out_dir>/manifest.yaml`. Relancer
depuis ce manifeste reproduit l'exécution à l'identique.
"""

import logging
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import List, Optional

from polarisation_likes.calibration import DEFAULT_N_COALITIONS, DEFAULT_NULL_SHARE, DEFAULT_SHARES
from polarisation_likes.enums import CommunityMethod, CovarianceType, ElectorateKind, GammaMode, Metric
from polarisation_likes.errors import ConfigError
from polarisation_likes.exports import read_yaml, write_yaml
from polarisation_likes.networks import DEFAULT_THETA
from polarisation_likes.signaling import DEFAULT_MESSAGES
from polarisation_likes.spatial import CONTINUOUS_GRID_POINTS

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42
MANIFEST_NAME = "manifest.yaml"
INPUT_FIELDS = ("politicians_file", "survey", "likes", "votes", "following", "coalitions", "periods")


@dataclass(frozen=True)
class ElectorateConfig:
    """Description de l'électorat; mean/std vides = moments de l'électorat empirique."""

    kind: str = ElectorateKind.EMPIRICAL_DISCRETE.value
    shares: List[float] = field(default_factory=lambda: list(DEFAULT_SHARES))
    null_share: float = DEFAULT_NULL_SHARE
    mean: Optional[float] = None
    std: Optional[float] = None
    grid_points: int = CONTINUOUS_GRID_POINTS


@dataclass(frozen=True)
class RunConfig:
    """Paramètres complets d'une commande."""

    seed: int = DEFAULT_SEED
    omega: float = 1.0
    messages: int = DEFAULT_MESSAGES
    gamma_mode: str = GammaMode.HETEROGENEOUS.value
    gamma: float = 0.0
    gamma_mean: float = 0.1
    gamma_sd: float = 0.1
    gamma_sweep: Optional[List[float]] = None
    electorate: ElectorateConfig = field(default_factory=ElectorateConfig)
    n_coalitions: int = DEFAULT_N_COALITIONS
    politicians_file: Optional[str] = None
    theta: float = DEFAULT_THETA
    method: str = CommunityMethod.LOUVAIN.value
    metric: str = Metric.LIKES.value
    cov_type: str = CovarianceType.CLASSICAL.value
    out_dir: str = "results"
    survey: Optional[str] = None
    skip_invalid: bool = False
    likes: Optional[str] = None
    votes: Optional[str] = None
    following: Optional[str] = None
    coalitions: Optional[str] = None
    periods: Optional[str] = None

    def to_dict(self) -> dict:
        """Dictionnaire sérialisable (ordre des champs conservé)."""
        return asdict(self)


def _build(data: dict) -> RunConfig:
    """Construit une RunConfig à partir d'un dictionnaire (clés inconnues refusées)."""
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"clés inconnues: {unknown}")
    values = dict(data)
    electorate = values.pop("electorate", None) or {}
    if not isinstance(electorate, dict):
        raise ConfigError("electorate doit être un dictionnaire")
    electorate_known = {f.name for f in fields(ElectorateConfig)}
    unknown = sorted(set(electorate) - electorate_known)
    if unknown:
        raise ConfigError(f"clés d'électorat inconnues: {unknown}")
    return RunConfig(electorate=ElectorateConfig(**electorate), **values)


def load_config(path=None, overrides: Optional[dict] = None) -> RunConfig:
    """
    Charge une configuration et applique les options de ligne de commande.

    Args:
        path: Fichier YAML (valeurs par défaut si None)
        overrides: Valeurs prioritaires; les None sont ignorés

    Returns:
        RunConfig validée
    """
    data = {}
    if path is not None:
        if not Path(path).exists():
            raise ConfigError(f"fichier de configuration introuvable: {path}")
        try:
            data = read_yaml(path)
        except Exception as exc:
            raise ConfigError(f"configuration illisible {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: un dictionnaire YAML est attendu")
        logger.debug("Configuration lue: %s", path)

    try:
        config = _build(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    changes = {key: value for key, value in (overrides or {}).items() if value is not None}
    if changes:
        config = replace(config, **changes)
    validate(config)
    return config


def validate(config: RunConfig):
    """
    Vérifie les valeurs et l'existence des fichiers référencés.

    Raises:
        ConfigError: à la première incohérence trouvée
    """
    def check(condition, message):
        if not condition:
            raise ConfigError(message)

    for enum, value, name in ((GammaMode, config.gamma_mode, "gamma_mode"),
                              (CommunityMethod, config.method, "method"),
                              (Metric, config.metric, "metric"),
                              (CovarianceType, config.cov_type, "cov_type"),
                              (ElectorateKind, config.electorate.kind, "electorate.kind")):
        allowed = [member.value for member in enum]
        check(value in allowed, f"{name} doit valoir l'un de {allowed}: {value!r}")

    check(isinstance(config.seed, int) and config.seed >= 0, f"seed entier >= 0 requis: {config.seed!r}")
    check(config.omega >= 0, f"omega doit être >= 0: {config.omega}")
    check(isinstance(config.messages, int) and config.messages >= 1,
          f"messages doit être un entier >= 1: {config.messages!r}")
    check(config.gamma >= 0, f"gamma doit être >= 0: {config.gamma}")
    check(config.gamma_sd >= 0, f"gamma_sd doit être >= 0: {config.gamma_sd}")
    if config.gamma_sweep is not None:
        check(len(config.gamma_sweep) > 0 and all(g >= 0 for g in config.gamma_sweep),
              f"gamma_sweep: liste non vide de valeurs >= 0 requise: {config.gamma_sweep}")
    check(isinstance(config.n_coalitions, int) and config.n_coalitions >= 1,
          f"n_coalitions entier >= 1 requis: {config.n_coalitions!r}")
    check(-1.0 <= config.theta <= 1.0, f"theta doit être dans [-1, 1]: {config.theta}")
    check(isinstance(config.skip_invalid, bool),
          f"skip_invalid doit être un booléen: {config.skip_invalid!r}")

    electorate = config.electorate
    check(len(electorate.shares) == 5, "electorate.shares: cinq parts requises")
    check(0 <= electorate.null_share <= 1, f"electorate.null_share dans [0, 1]: {electorate.null_share}")
    check(electorate.std is None or electorate.std >= 0, f"electorate.std >= 0: {electorate.std}")
    check(isinstance(electorate.grid_points, int) and electorate.grid_points >= 2,
          f"electorate.grid_points entier >= 2: {electorate.grid_points!r}")

    for name in INPUT_FIELDS:
        value = getattr(config, name)
        if value is not None:
            check(Path(value).exists(), f"{name}: fichier introuvable {value}")


def require(config: RunConfig, *names: str):
    """Vérifie que les entrées nécessaires à une commande sont renseignées."""
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise ConfigError(f"entrées manquantes: {missing}")


def write_manifest(config: RunConfig, out_dir=None) -> Path:
    """
    Recopie la configuration résolue dans le dossier de sortie.

    Returns:
        Chemin du manifeste
    """
    path = Path(out_dir or config.out_dir) / MANIFEST_NAME
    write_yaml(config.to_dict(), path)
    return path
