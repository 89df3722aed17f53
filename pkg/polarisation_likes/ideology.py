"""
Estimation de l'idéologie perçue des politiciens à partir d'une enquête.

Pour chaque politicien, l'opinion des répondants (1..5) est régressée sur leur
auto-positionnement idéologique (1..5); la pente β mesure de quel côté de
l'axe le politicien est apprécié. Les pentes sont ensuite ramenées sur
l'axe 1 (droite) .. 5 (gauche).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from polarisation_likes.econometrics import CONSTANT, RegressionEngine
from polarisation_likes.errors import (
    DegenerateRange, DegenerateRegressor, DuplicateDyad, InsufficientData, SchemaError
)

logger = logging.getLogger(__name__)

SCALE = (1, 2, 3, 4, 5)
AXIS_MIN = 1.0
AXIS_MAX = 5.0
MIN_RESPONSES = 3
SURVEY_COLUMNS = ("respondent_id", "self_ideology", "politician_id", "opinion")
ESTIMATE_COLUMNS = ("politician_id", "beta", "beta_se", "mu", "sigma")


def _check_scale(value, what: str) -> Optional[int]:
    if value is None:
        return None
    if value not in SCALE:
        raise SchemaError(f"{what} hors de l'échelle 1..5: {value}")
    return int(value)


@dataclass(frozen=True)
class SurveyResponse:
    """Réponses d'un répondant: auto-positionnement et opinions par politicien."""

    respondent_id: str
    self_ideology: Optional[int]
    opinions: Dict[str, Optional[int]] = field(default_factory=dict)

    def __post_init__(self):
        _check_scale(self.self_ideology, "self_ideology")
        for politician_id, opinion in self.opinions.items():
            _check_scale(opinion, f"opinion sur {politician_id}")


@dataclass(frozen=True)
class RawEstimate:
    """Pente brute et son écart-type pour un politicien."""

    politician_id: str
    beta: float
    beta_se: float


@dataclass(frozen=True)
class IdeologyEstimate:
    """Idéologie ramenée sur l'axe 1..5."""

    politician_id: str
    beta: float
    beta_se: float
    mu: float
    sigma: float


class IdeologyEstimator:
    """
    Estimation des idéologies (μ, σ) des politiciens.
    """

    @staticmethod
    def estimate_raw(survey: Sequence[SurveyResponse], politician_id: str) -> Tuple[float, float]:
        """
        Régression opinion ~ 1 + auto-positionnement pour un politicien.

        Les répondants sans auto-positionnement ou sans opinion sur ce
        politicien sont exclus.

        Args:
            survey: Réponses à l'enquête
            politician_id: Politicien évalué

        Returns:
            (beta, beta_se) pente et écart-type classique
        """
        pairs = [
            (response.self_ideology, response.opinions.get(politician_id))
            for response in survey
            if response.self_ideology is not None
            and response.opinions.get(politician_id) is not None
        ]
        if len(pairs) < MIN_RESPONSES:
            raise InsufficientData(
                f"{politician_id}: {len(pairs)} réponses utilisables, {MIN_RESPONSES} requises"
            )
        ideology, opinion = (np.array(column, dtype=float) for column in zip(*pairs))
        if np.all(ideology == ideology[0]):
            raise DegenerateRegressor(f"{politician_id}: auto-positionnement sans variance")

        design = np.column_stack([np.ones(len(ideology)), ideology])
        result = RegressionEngine.ols(design, opinion, [CONSTANT, "self_ideology"])
        return result.coefficients["self_ideology"], result.std_errors["self_ideology"]

    @staticmethod
    def rescale(estimates: Sequence[RawEstimate]) -> List[IdeologyEstimate]:
        """
        Ramène les pentes sur l'axe: β max -> 5 (gauche), β min -> 1 (droite).

        μ = 1 + 4·(β - β_min)/(β_max - β_min) et σ = se·4/(β_max - β_min).

        Args:
            estimates: Pentes brutes

        Returns:
            Liste d'IdeologyEstimate dans l'ordre d'entrée
        """
        if not estimates:
            raise DegenerateRange("aucune estimation à remettre à l'échelle")
        betas = np.array([e.beta for e in estimates], dtype=float)
        beta_min, beta_max = betas.min(), betas.max()
        if beta_max == beta_min:
            raise DegenerateRange(f"toutes les pentes valent {beta_min}")
        factor = (AXIS_MAX - AXIS_MIN) / (beta_max - beta_min)
        return [
            IdeologyEstimate(
                politician_id=e.politician_id,
                beta=e.beta,
                beta_se=e.beta_se,
                mu=AXIS_MIN + factor * (e.beta - beta_min),
                sigma=e.beta_se * factor,
            )
            for e in estimates
        ]

    @staticmethod
    def estimate_all(survey: Sequence[SurveyResponse], skip_invalid: bool = False) -> List[IdeologyEstimate]:
        """
        Estime et remet à l'échelle tous les politiciens évalués.

        Args:
            survey: Réponses à l'enquête
            skip_invalid: Ignorer (avec un avertissement) les politiciens non
                estimables au lieu de lever la première erreur

        Returns:
            Estimations triées par identifiant

        Raises:
            InsufficientData, DegenerateRegressor: premier politicien non estimable
        """
        politician_ids = sorted({pid for response in survey for pid in response.opinions})
        raw = []
        for politician_id in politician_ids:
            try:
                beta, beta_se = IdeologyEstimator.estimate_raw(survey, politician_id)
            except (InsufficientData, DegenerateRegressor) as exc:
                if not skip_invalid:
                    raise
                logger.warning("⚠️ %s ignoré: %s", politician_id, exc)
                continue
            raw.append(RawEstimate(politician_id, beta, beta_se))
        estimates = IdeologyEstimator.rescale(raw)
        logger.info("Idéologie estimée pour %d politiciens sur %d", len(estimates), len(politician_ids))
        return estimates

    @staticmethod
    def read_survey(path) -> List[SurveyResponse]:
        """
        Lit une enquête au format long `respondent_id,self_ideology,politician_id,opinion`.

        Un champ vide vaut null.

        Args:
            path: Fichier CSV

        Returns:
            Réponses par répondant, dans l'ordre d'apparition
        """
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        missing = [c for c in SURVEY_COLUMNS if c not in frame.columns]
        if missing:
            raise SchemaError(f"colonnes manquantes: {missing}", path=path, line=1)

        self_ideology: Dict[str, Optional[int]] = {}
        opinions: Dict[str, Dict[str, Optional[int]]] = {}
        for index, row in frame.iterrows():
            line = index + 2
            respondent = row["respondent_id"].strip()
            politician = row["politician_id"].strip()
            if not respondent or not politician:
                raise SchemaError("identifiant vide", path=path, line=line)
            ideology = IdeologyEstimator._parse_scale(row["self_ideology"], path, line)
            opinion = IdeologyEstimator._parse_scale(row["opinion"], path, line)

            if respondent in self_ideology and self_ideology[respondent] != ideology:
                raise SchemaError(f"auto-positionnement incohérent pour {respondent}",
                                  path=path, line=line)
            self_ideology[respondent] = ideology
            answers = opinions.setdefault(respondent, {})
            if politician in answers:
                raise DuplicateDyad(f"réponse dupliquée ({respondent}, {politician})",
                                    path=path, line=line)
            answers[politician] = opinion

        return [SurveyResponse(rid, self_ideology[rid], opinions[rid]) for rid in opinions]

    @staticmethod
    def _parse_scale(value: str, path, line: int) -> Optional[int]:
        text = value.strip()
        if not text:
            return None
        try:
            number = float(text)
        except ValueError:
            raise SchemaError(f"valeur non numérique: {text!r}", path=path, line=line) from None
        if not number.is_integer() or int(number) not in SCALE:
            raise SchemaError(f"valeur hors de l'échelle 1..5: {text!r}", path=path, line=line)
        return int(number)

    @staticmethod
    def to_frame(estimates: Sequence[IdeologyEstimate]) -> pd.DataFrame:
        """Table `politician_id,beta,beta_se,mu,sigma`."""
        return pd.DataFrame([vars(e) for e in estimates], columns=list(ESTIMATE_COLUMNS))

    @staticmethod
    def read_estimates(path) -> List[IdeologyEstimate]:
        """
        Relit un fichier d'estimations (entrée `politicians_file` d'une simulation).

        Args:
            path: CSV `politician_id,beta,beta_se,mu,sigma`

        Returns:
            Liste d'IdeologyEstimate
        """
        frame = pd.read_csv(path, dtype={"politician_id": str})
        missing = [c for c in ("politician_id", "mu", "sigma") if c not in frame.columns]
        if missing:
            raise SchemaError(f"colonnes manquantes: {missing}", path=path, line=1)
        if frame["politician_id"].duplicated().any():
            line = int(np.flatnonzero(frame["politician_id"].duplicated())[0]) + 2
            raise DuplicateDyad("politicien dupliqué", path=path, line=line)
        estimates = []
        for index, row in frame.iterrows():
            if not np.isfinite(row["mu"]) or not row["sigma"] > 0:
                raise SchemaError("mu fini et sigma > 0 requis", path=path, line=index + 2)
            estimates.append(IdeologyEstimate(
                politician_id=row["politician_id"],
                beta=float(row.get("beta", np.nan)),
                beta_se=float(row.get("beta_se", np.nan)),
                mu=float(row["mu"]),
                sigma=float(row["sigma"]),
            ))
        return estimates
