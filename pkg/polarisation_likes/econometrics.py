"""
Régressions du modèle simulé et du panel d'interactions.

Ce module contient le cœur moindres carrés (statsmodels), la régression des
likes simulés sur le statut d'opposant, la régression en panel à effets fixes
politicien et période (variables indicatrices ou transformation within) et la
première composante principale utilisée pour l'analyse des résidus.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import statsmodels.api as sm

from polarisation_likes.enums import CovarianceType, DependentVariable, RegressionTerm
from polarisation_likes.errors import (
    ConfigError, InsufficientData, NoVariation, RankDeficient, ZeroVariance
)

logger = logging.getLogger(__name__)

CONSTANT = "const"
WITHIN_TOLERANCE = 1e-13
WITHIN_MAX_ITERATIONS = 10_000

# Colonnes du tableau des interactions (variable dépendante, termes)
TABLE_SPECIFICATIONS = {
    1: (DependentVariable.LIKES, (RegressionTerm.OPPONENTS,)),
    2: (DependentVariable.LIKES, (RegressionTerm.FOLLOWING,)),
    3: (DependentVariable.LIKES, (RegressionTerm.OPPONENTS, RegressionTerm.FOLLOWING)),
    4: (DependentVariable.VOTES, (RegressionTerm.OPPONENTS,)),
    5: (DependentVariable.VOTES, (RegressionTerm.FOLLOWING,)),
    6: (DependentVariable.VOTES, (RegressionTerm.OPPONENTS, RegressionTerm.FOLLOWING)),
    7: (DependentVariable.VOTES, (RegressionTerm.FOLLOWING, RegressionTerm.LIKES)),
    8: (DependentVariable.VOTES, (RegressionTerm.OPPONENTS, RegressionTerm.FOLLOWING,
                                  RegressionTerm.LIKES, RegressionTerm.LIKES_X_OPP)),
    9: (DependentVariable.VOTES, (RegressionTerm.OPPONENTS, RegressionTerm.FOLLOWING,
                                  RegressionTerm.LIKES, RegressionTerm.LIKES_X_OPP,
                                  RegressionTerm.LIKES_SQ, RegressionTerm.LIKES_SQ_X_OPP)),
}

# Terme -> termes qui doivent l'accompagner
TERM_HIERARCHY = {
    RegressionTerm.LIKES_SQ: (RegressionTerm.LIKES,),
    RegressionTerm.LIKES_X_OPP: (RegressionTerm.LIKES,),
    RegressionTerm.LIKES_SQ_X_OPP: (RegressionTerm.LIKES, RegressionTerm.LIKES_SQ),
}

LIKES_TERMS = (RegressionTerm.LIKES, RegressionTerm.LIKES_SQ,
               RegressionTerm.LIKES_X_OPP, RegressionTerm.LIKES_SQ_X_OPP)

PANEL_COLUMNS = ("i", "j", "t", "likes", "votes", "opponents", "following")


@dataclass(frozen=True)
class PanelRow:
    """Dyade ordonnée (i, j) observée à la période t."""

    i: str
    j: str
    t: str
    likes: int
    votes: int
    opponents: int
    following: int

    def __post_init__(self):
        if self.likes < 0 or self.votes < 0:
            raise ValueError(f"comptes négatifs pour ({self.i}, {self.j}, {self.t})")
        if self.opponents not in (0, 1) or self.following not in (0, 1):
            raise ValueError(f"indicateurs hors de {{0, 1}} pour ({self.i}, {self.j}, {self.t})")


@dataclass(frozen=True, eq=False)
class RegressionResult:
    """Coefficients, écarts-types et ajustement d'une régression."""

    coefficients: Dict[str, float]
    std_errors: Dict[str, float]
    tstats: Dict[str, float]
    n_obs: int
    adj_r2: float
    residuals: np.ndarray
    cov_type: CovarianceType = CovarianceType.CLASSICAL
    absorbed: Tuple[str, ...] = field(default=())

    @property
    def terms(self) -> Tuple[str, ...]:
        return tuple(self.coefficients)

    def to_frame(self) -> pd.DataFrame:
        """
        Table `term,coef,se,tstat` suivie des lignes `n_obs` et `adj_r2`.

        Returns:
            DataFrame prêt pour l'export CSV
        """
        rows = [
            {"term": term, "coef": self.coefficients[term],
             "se": self.std_errors[term], "tstat": self.tstats[term]}
            for term in self.coefficients
        ]
        rows.append({"term": "n_obs", "coef": self.n_obs, "se": np.nan, "tstat": np.nan})
        rows.append({"term": "adj_r2", "coef": self.adj_r2, "se": np.nan, "tstat": np.nan})
        return pd.DataFrame(rows, columns=["term", "coef", "se", "tstat"])


class RegressionEngine:
    """
    Moteur des régressions linéaires.
    """

    @staticmethod
    def check_rank(design: np.ndarray, names: Sequence[str]):
        """
        Vérifie que la matrice de design est de rang plein.

        Args:
            design: Matrice (n, p)
            names: Noms des colonnes

        Raises:
            RankDeficient: avec l'index de la première colonne colinéaire aux précédentes
        """
        p = design.shape[1]
        if np.linalg.matrix_rank(design) == p:
            return
        for k in range(1, p + 1):
            if np.linalg.matrix_rank(design[:, :k]) < k:
                raise RankDeficient(k - 1, names[k - 1])

    @staticmethod
    def ols(design, y, names: Optional[Sequence[str]] = None,
            cov_type=CovarianceType.CLASSICAL, report: Optional[Iterable[str]] = None,
            absorbed_dof: int = 0) -> RegressionResult:
        """
        Moindres carrés ordinaires.

        Args:
            design: Matrice de design (n, p), constante incluse si souhaitée
            y: Variable dépendante (n,)
            names: Noms des colonnes (x0, x1, ... par défaut)
            cov_type: Écarts-types classiques ou robustes (HC1)
            report: Colonnes à rapporter (toutes par défaut)
            absorbed_dof: Degrés de liberté absorbés en amont (transformation within)

        Returns:
            RegressionResult
        """
        X = np.asarray(design, dtype=float)
        target = np.asarray(y, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        n, p = X.shape
        if target.shape != (n,):
            raise ValueError(f"y de taille {target.shape} incompatible avec le design {X.shape}")
        names = list(names) if names is not None else [f"x{k}" for k in range(p)]
        if len(names) != p:
            raise ValueError("autant de noms que de colonnes requis")
        if n < p + absorbed_dof:
            raise InsufficientData(f"{n} observations pour {p + absorbed_dof} paramètres")

        RegressionEngine.check_rank(X, names)

        cov_type = CovarianceType(cov_type)
        model = sm.OLS(target, X)
        fit = model.fit(cov_type="HC1") if cov_type == CovarianceType.ROBUST else model.fit()

        bse = np.asarray(fit.bse, dtype=float)
        residual_dof = n - p - absorbed_dof
        if absorbed_dof:
            bse = bse * np.sqrt((n - p) / residual_dof) if residual_dof > 0 else np.full(p, np.nan)
        params = np.asarray(fit.params, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            tvalues = params / bse

        adj_r2 = RegressionEngine._adjusted_r2(target, np.asarray(fit.resid), p + absorbed_dof,
                                               has_constant=CONSTANT in names or absorbed_dof > 0)

        kept = list(report) if report is not None else names
        index = {name: k for k, name in enumerate(names)}
        return RegressionResult(
            coefficients={name: float(params[index[name]]) for name in kept},
            std_errors={name: float(bse[index[name]]) for name in kept},
            tstats={name: float(tvalues[index[name]]) for name in kept},
            n_obs=n,
            adj_r2=adj_r2,
            residuals=np.asarray(fit.resid, dtype=float),
            cov_type=cov_type,
            absorbed=tuple(name for name in names if name not in kept),
        )

    @staticmethod
    def _adjusted_r2(y: np.ndarray, residuals: np.ndarray, n_params: int,
                     has_constant: bool) -> float:
        """R² ajusté (centré si le modèle contient une constante)."""
        n = len(y)
        ssr = float(residuals @ residuals)
        tss = float(((y - y.mean()) ** 2).sum()) if has_constant else float(y @ y)
        if tss == 0 or n - n_params <= 0:
            return float("nan")
        dof_constant = 1 if has_constant else 0
        return 1.0 - (ssr / (n - n_params)) / (tss / (n - dof_constant))

    @staticmethod
    def simulated_regression(dyads: pd.DataFrame,
                             cov_type=CovarianceType.CLASSICAL) -> RegressionResult:
        """
        Régression Likes_ij = α + β·Opponents_ij + ε sur les dyades simulées.

        Args:
            dyads: Table avec les colonnes `likes` et `opponents`
            cov_type: Type d'écarts-types

        Returns:
            RegressionResult avec les termes `const` et `opponents`
        """
        missing = {"likes", "opponents"} - set(dyads.columns)
        if missing:
            raise ValueError(f"colonnes manquantes: {sorted(missing)}")
        if len(dyads) < 3:
            raise InsufficientData(f"{len(dyads)} dyades, au moins 3 requises")
        opponents = dyads["opponents"].to_numpy(dtype=float)
        if np.all(opponents == opponents[0]):
            raise NoVariation("la variable opponents est constante")

        design = np.column_stack([np.ones(len(dyads)), opponents])
        result = RegressionEngine.ols(design, dyads["likes"].to_numpy(dtype=float),
                                      [CONSTANT, RegressionTerm.OPPONENTS.value], cov_type)
        logger.info("Régression simulée: β=%.3f (t=%.2f), N=%d",
                    result.coefficients["opponents"], result.tstats["opponents"], result.n_obs)
        return result

    @staticmethod
    def validate_spec(dependent, terms: Sequence) -> Tuple[DependentVariable, Tuple[RegressionTerm, ...]]:
        """
        Valide une spécification de régression en panel.

        Args:
            dependent: likes ou votes
            terms: Termes (RegressionTerm ou leurs noms)

        Returns:
            (variable dépendante, termes) normalisés
        """
        try:
            dependent = DependentVariable(dependent)
            terms = tuple(RegressionTerm(term) for term in terms)
        except ValueError as exc:
            raise ConfigError(f"spécification invalide: {exc}") from None
        if not terms:
            raise ConfigError("au moins un terme requis")
        if len(set(terms)) != len(terms):
            raise ConfigError("terme répété dans la spécification")
        for term in terms:
            for required in TERM_HIERARCHY.get(term, ()):
                if required not in terms:
                    raise ConfigError(f"{term.value} requiert {required.value}")
        if dependent == DependentVariable.LIKES and any(t in LIKES_TERMS for t in terms):
            raise ConfigError("les likes ne peuvent pas expliquer les likes")
        return dependent, terms

    @staticmethod
    def panel_frame(panel: Union[pd.DataFrame, Sequence[PanelRow]]) -> pd.DataFrame:
        """
        Panel en DataFrame trié par (t, i, j).

        Args:
            panel: Liste de PanelRow ou DataFrame aux colonnes du panel

        Returns:
            DataFrame aux colonnes i, j, t, likes, votes, opponents, following
        """
        if isinstance(panel, pd.DataFrame):
            frame = panel.loc[:, list(PANEL_COLUMNS)].copy()
        else:
            frame = pd.DataFrame([vars(row) for row in panel], columns=list(PANEL_COLUMNS))
        for column in ("i", "j", "t"):
            frame[column] = frame[column].astype(str)
        return frame.sort_values(["t", "i", "j"], kind="mergesort").reset_index(drop=True)

    @staticmethod
    def term_columns(frame: pd.DataFrame, terms: Sequence[RegressionTerm]) -> pd.DataFrame:
        """Construit les colonnes des régresseurs (carrés, interactions)."""
        likes = frame["likes"].astype(float)
        opponents = frame["opponents"].astype(float)
        builders = {
            RegressionTerm.OPPONENTS: lambda: opponents,
            RegressionTerm.FOLLOWING: lambda: frame["following"].astype(float),
            RegressionTerm.LIKES: lambda: likes,
            RegressionTerm.LIKES_SQ: lambda: likes ** 2,
            RegressionTerm.LIKES_X_OPP: lambda: likes * opponents,
            RegressionTerm.LIKES_SQ_X_OPP: lambda: likes ** 2 * opponents,
        }
        return pd.DataFrame({term.value: builders[term]() for term in terms}, index=frame.index)

    @staticmethod
    def _check_panel(frame: pd.DataFrame):
        if frame["t"].nunique() < 2:
            raise InsufficientData("au moins 2 périodes requises")
        if frame["i"].nunique() < 2:
            raise InsufficientData("au moins 2 politiciens (entités) requis")

    @staticmethod
    def panel_fe_regression(panel, dependent, terms: Sequence,
                            cov_type=CovarianceType.CLASSICAL) -> RegressionResult:
        """
        Régression en panel avec effets fixes politicien (i) et période (t).

        Les effets fixes sont des indicatrices, une modalité omise par groupe.

        Args:
            panel: Liste de PanelRow ou DataFrame
            dependent: likes ou votes
            terms: Régresseurs de la spécification
            cov_type: Type d'écarts-types

        Returns:
            RegressionResult sur `const` et les termes (effets fixes absorbés)
        """
        dependent, terms = RegressionEngine.validate_spec(dependent, terms)
        frame = RegressionEngine.panel_frame(panel)
        RegressionEngine._check_panel(frame)

        entity = pd.get_dummies(frame["i"], prefix="alpha_i", drop_first=True, dtype=float)
        period = pd.get_dummies(frame["t"], prefix="alpha_t", drop_first=True, dtype=float)
        regressors = RegressionEngine.term_columns(frame, terms)

        design = pd.concat(
            [pd.Series(1.0, index=frame.index, name=CONSTANT), entity, period, regressors], axis=1
        )
        report = [CONSTANT] + list(regressors.columns)
        return RegressionEngine.ols(design.to_numpy(dtype=float),
                                    frame[dependent.value].to_numpy(dtype=float),
                                    list(design.columns), cov_type, report=report)

    @staticmethod
    def demean_two_way(values: np.ndarray, entity: np.ndarray, period: np.ndarray) -> np.ndarray:
        """
        Retire les moyennes par entité et par période (projections alternées).

        Args:
            values: Matrice (n, k)
            entity: Codes d'entité (n,)
            period: Codes de période (n,)

        Returns:
            Matrice (n, k) orthogonale aux indicatrices d'entité et de période
        """
        current = np.array(values, dtype=float, copy=True)
        entity_counts = np.bincount(entity)[:, None]
        period_counts = np.bincount(period)[:, None]
        scale = max(1.0, float(np.abs(current).max(initial=0.0)))
        for _ in range(WITHIN_MAX_ITERATIONS):
            previous = current
            sums = np.zeros((entity_counts.shape[0], current.shape[1]))
            np.add.at(sums, entity, current)
            current = current - (sums / entity_counts)[entity]
            sums = np.zeros((period_counts.shape[0], current.shape[1]))
            np.add.at(sums, period, current)
            current = current - (sums / period_counts)[period]
            if np.abs(current - previous).max(initial=0.0) <= WITHIN_TOLERANCE * scale:
                return current
        logger.warning("⚠️ Transformation within non convergée après %d itérations",
                       WITHIN_MAX_ITERATIONS)
        return current

    @staticmethod
    def within_fe_regression(panel, dependent, terms: Sequence,
                             cov_type=CovarianceType.CLASSICAL) -> RegressionResult:
        """
        Même modèle que panel_fe_regression, estimé par double centrage.

        Les pentes et les résidus coïncident avec l'estimateur à indicatrices;
        les écarts-types sont corrigés des degrés de liberté absorbés.

        Returns:
            RegressionResult sur les termes (sans constante)
        """
        dependent, terms = RegressionEngine.validate_spec(dependent, terms)
        frame = RegressionEngine.panel_frame(panel)
        RegressionEngine._check_panel(frame)

        entity = pd.factorize(frame["i"], sort=True)[0]
        period = pd.factorize(frame["t"], sort=True)[0]
        regressors = RegressionEngine.term_columns(frame, terms)

        stacked = np.column_stack([frame[dependent.value].to_numpy(dtype=float),
                                   regressors.to_numpy(dtype=float)])
        demeaned = RegressionEngine.demean_two_way(stacked, entity, period)
        absorbed = (entity.max() + 1) + (period.max() + 1) - 1
        return RegressionEngine.ols(demeaned[:, 1:], demeaned[:, 0], list(regressors.columns),
                                    cov_type, absorbed_dof=absorbed)

    @staticmethod
    def table_regressions(panel, columns: Optional[Iterable[int]] = None,
                          cov_type=CovarianceType.CLASSICAL) -> Dict[int, RegressionResult]:
        """
        Estime les colonnes du tableau des interactions.

        Args:
            panel: Panel d'interactions
            columns: Numéros de colonnes (1..9 par défaut)

        Returns:
            Dict colonne -> RegressionResult
        """
        frame = RegressionEngine.panel_frame(panel)
        results = {}
        for column in (columns or TABLE_SPECIFICATIONS):
            dependent, terms = TABLE_SPECIFICATIONS[column]
            results[column] = RegressionEngine.panel_fe_regression(frame, dependent, terms, cov_type)
            logger.debug("Colonne %d estimée (%s)", column, dependent.value)
        return results

    @staticmethod
    def principal_axis(xs, ys) -> Tuple[np.ndarray, float]:
        """
        Première direction principale des données standardisées.

        Args:
            xs: Première variable
            ys: Seconde variable

        Returns:
            (chargements (2,), part de variance expliquée)
        """
        data = RegressionEngine._standardize(xs, ys)
        correlation = data.T @ data / data.shape[0]
        eigenvalues, eigenvectors = np.linalg.eigh(correlation)
        # r = 0: valeurs propres égales, eigh ne fixe pas l'axe
        if np.isclose(correlation[0, 1], 0.0, atol=1e-15):
            loadings = np.full(2, 1.0 / np.sqrt(2.0))
        else:
            loadings = eigenvectors[:, -1]
        if loadings[0] < 0:
            loadings = -loadings
        return loadings, float(eigenvalues[-1] / eigenvalues.sum())

    @staticmethod
    def pc1(xs, ys) -> np.ndarray:
        """
        Scores sur la première composante principale de (xs, ys) standardisés.

        Le signe est choisi pour que le chargement de xs soit positif.

        Returns:
            Scores (n,)
        """
        loadings, _ = RegressionEngine.principal_axis(xs, ys)
        return RegressionEngine._standardize(xs, ys) @ loadings

    @staticmethod
    def _standardize(xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape != ys.shape:
            raise ValueError("xs et ys doivent avoir la même longueur")
        data = np.column_stack([xs, ys])
        if data.shape[0] < 2:
            raise InsufficientData("au moins 2 points requis")
        std = data.std(axis=0)
        if np.any(std == 0):
            raise ZeroVariance("variable de variance nulle")
        return (data - data.mean(axis=0)) / std

    @staticmethod
    def residual_pc1_table(dyads: pd.DataFrame, result: RegressionResult,
                           politicians: Sequence) -> pd.DataFrame:
        """
        Associe chaque résidu de la régression simulée au score PC1 (μ, γ)
        du politicien qui like.

        Args:
            dyads: Dyades utilisées pour la régression (même ordre)
            result: Résultat de simulated_regression
            politicians: Politiciens avec γ assigné

        Returns:
            DataFrame `liker_id,sender_id,residual,pc1`
        """
        if len(dyads) != result.n_obs:
            raise ValueError("les dyades ne correspondent pas à la régression")
        ordered = sorted(politicians, key=lambda p: p.id)
        scores = RegressionEngine.pc1([p.mu for p in ordered], [p.gamma for p in ordered])
        score_of = {p.id: float(s) for p, s in zip(ordered, scores)}
        return pd.DataFrame({
            "liker_id": dyads["liker_id"].to_numpy(),
            "sender_id": dyads["sender_id"].to_numpy(),
            "residual": result.residuals,
            "pc1": [score_of[pid] for pid in dyads["liker_id"]],
        })
