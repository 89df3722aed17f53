"""
Lecture des panels d'interactions et statistiques descriptives.

Les entrées sont des CSV au format long (une dyade-période par ligne):

    likes.csv        period,liker_id,target_id,likes
    votes.csv        period,i,j,votes_in_favor
    following.csv    i,j,follows
    coalitions.csv   politician_id,coalition
    periods.csv      label,votes_start,votes_end,likes_date

Les erreurs de lecture indiquent le fichier et la ligne (1 = en-tête).
"""

import datetime
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from polarisation_likes.econometrics import PanelRow, RegressionEngine
from polarisation_likes.enums import GroupFilter, Metric
from polarisation_likes.errors import DuplicateDyad, EmptyGroup, SchemaError, UnknownPolitician
from polarisation_likes.exports import write_csv

logger = logging.getLogger(__name__)

LIKES_COLUMNS = ("period", "liker_id", "target_id", "likes")
VOTES_COLUMNS = ("period", "i", "j", "votes_in_favor")
FOLLOWING_COLUMNS = ("i", "j", "follows")
COALITION_COLUMNS = ("politician_id", "coalition")
PERIOD_COLUMNS = ("label", "votes_start", "votes_end", "likes_date")

PANEL_FILES = {
    "likes": "likes.csv",
    "votes": "votes.csv",
    "following": "following.csv",
    "coalitions": "coalitions.csv",
}


@dataclass(frozen=True)
class PeriodSpec:
    """Fenêtre de votes et date de collecte des likes d'une période."""

    label: str
    votes_start: datetime.date
    votes_end: datetime.date
    likes_date: datetime.date

    def __post_init__(self):
        if not self.votes_start < self.votes_end <= self.likes_date:
            raise ValueError(
                f"période {self.label}: votes_start < votes_end <= likes_date requis"
            )


@dataclass(frozen=True)
class SummaryBlock:
    """Statistiques d'une métrique pour un groupe de dyades et une période."""

    period: str
    group: GroupFilter
    metric: Metric
    mean: float
    median: float
    std_dev: float
    n: int


@dataclass(frozen=True)
class InteractionPanel:
    """Panel de dyades ordonnées, coalitions et rapport de jointure."""

    rows: Tuple[PanelRow, ...]
    coalitions: Dict[str, str]
    join_report: Tuple[str, ...] = field(default=())

    @property
    def periods(self) -> List[str]:
        """Étiquettes des périodes, dans l'ordre trié."""
        return sorted({row.t for row in self.rows})

    @property
    def politicians(self) -> List[str]:
        return sorted(self.coalitions)

    def frame(self) -> pd.DataFrame:
        return RegressionEngine.panel_frame(self.rows)

    def __eq__(self, other):
        if not isinstance(other, InteractionPanel):
            return NotImplemented
        return self.rows == other.rows and self.coalitions == other.coalitions


def _read_table(path, columns: Sequence[str]) -> pd.DataFrame:
    """Lit un CSV en texte et vérifie les colonnes requises."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise SchemaError("fichier vide", path=path, line=1) from None
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"colonnes manquantes: {missing}", path=path, line=1)
    for column in columns:
        frame[column] = frame[column].str.strip()
    return frame


def _line(index: int) -> int:
    return int(index) + 2


def _parse_counts(frame: pd.DataFrame, column: str, path, binary: bool = False) -> np.ndarray:
    """Entiers >= 0 (ou dans {0, 1}), erreur localisée sinon."""
    values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=float)
    invalid = ~np.isfinite(values) | (values < 0) | (values != np.round(values))
    if binary:
        invalid |= values > 1
    if invalid.any():
        index = int(np.flatnonzero(invalid)[0])
        expected = "0 ou 1" if binary else "un entier >= 0"
        raise SchemaError(f"{column} doit être {expected}: {frame[column].iloc[index]!r}",
                          path=path, line=_line(index))
    return values.astype(np.int64)


def _check_duplicates(frame: pd.DataFrame, keys: Sequence[str], path):
    duplicated = frame.duplicated(subset=list(keys), keep="first").to_numpy()
    if duplicated.any():
        index = int(np.flatnonzero(duplicated)[0])
        key = tuple(frame[k].iloc[index] for k in keys)
        raise DuplicateDyad(f"dyade dupliquée {key}", path=path, line=_line(index))


def _check_known(frame: pd.DataFrame, columns: Sequence[str], known, path):
    for column in columns:
        unknown = ~frame[column].isin(known).to_numpy()
        if unknown.any():
            index = int(np.flatnonzero(unknown)[0])
            raise UnknownPolitician(
                f"politicien inconnu dans {column}: {frame[column].iloc[index]!r}",
                path=path, line=_line(index),
            )


class PanelLoader:
    """
    Lecture, jointure et résumé des panels d'interactions.
    """

    @staticmethod
    def load_coalitions(path) -> Dict[str, str]:
        """
        Lit `politician_id,coalition`.

        Returns:
            Dict identifiant -> étiquette de coalition
        """
        frame = _read_table(path, COALITION_COLUMNS)
        empty = (frame["politician_id"] == "") | (frame["coalition"] == "")
        if empty.any():
            raise SchemaError("champ vide", path=path, line=_line(np.flatnonzero(empty.to_numpy())[0]))
        _check_duplicates(frame, ["politician_id"], path)
        return dict(zip(frame["politician_id"], frame["coalition"]))

    @staticmethod
    def load_panel(likes_file, votes_file, following_file, coalition_file) -> InteractionPanel:
        """
        Assemble le panel (i, j, t) à partir des quatre fichiers.

        Une dyade présente dans les votes mais absente des likes reçoit 0 like
        (et réciproquement); chaque complétion est notée dans le rapport de
        jointure `MISSING <fichier> <i> <j> <t>`. Le suivi absent vaut 0.

        Args:
            likes_file: CSV des likes
            votes_file: CSV des votes en faveur
            following_file: CSV du suivi (None si indisponible)
            coalition_file: CSV des coalitions

        Returns:
            InteractionPanel trié par (t, i, j)
        """
        coalitions = PanelLoader.load_coalitions(coalition_file)
        known = set(coalitions)

        likes = _read_table(likes_file, LIKES_COLUMNS)
        _check_known(likes, ["liker_id", "target_id"], known, likes_file)
        _check_duplicates(likes, ["period", "liker_id", "target_id"], likes_file)
        like_counts = _parse_counts(likes, "likes", likes_file)

        votes = _read_table(votes_file, VOTES_COLUMNS)
        _check_known(votes, ["i", "j"], known, votes_file)
        _check_duplicates(votes, ["period", "i", "j"], votes_file)
        vote_counts = _parse_counts(votes, "votes_in_favor", votes_file)

        follows: Dict[Tuple[str, str], int] = {}
        if following_file is not None:
            following = _read_table(following_file, FOLLOWING_COLUMNS)
            _check_known(following, ["i", "j"], known, following_file)
            _check_duplicates(following, ["i", "j"], following_file)
            flags = _parse_counts(following, "follows", following_file, binary=True)
            follows = dict(zip(zip(following["i"], following["j"]), flags.tolist()))

        like_of = dict(zip(zip(likes["liker_id"], likes["target_id"], likes["period"]),
                           like_counts.tolist()))
        vote_of = dict(zip(zip(votes["i"], votes["j"], votes["period"]), vote_counts.tolist()))

        rows = []
        report = []
        for i, j, t in sorted(set(like_of) | set(vote_of), key=lambda key: (key[2], key[0], key[1])):
            if (i, j, t) not in like_of:
                report.append(f"MISSING likes {i} {j} {t}")
            if (i, j, t) not in vote_of:
                report.append(f"MISSING votes {i} {j} {t}")
            rows.append(PanelRow(
                i=i, j=j, t=t,
                likes=like_of.get((i, j, t), 0),
                votes=vote_of.get((i, j, t), 0),
                opponents=int(coalitions[i] != coalitions[j]),
                following=follows.get((i, j), 0),
            ))

        logger.info("Panel chargé: %d dyades-périodes, %d complétions", len(rows), len(report))
        return InteractionPanel(rows=tuple(rows), coalitions=coalitions, join_report=tuple(report))

    @staticmethod
    def load_periods(path) -> List[PeriodSpec]:
        """
        Lit `label,votes_start,votes_end,likes_date` (dates ISO-8601).

        Returns:
            Périodes dans l'ordre du fichier
        """
        frame = _read_table(path, PERIOD_COLUMNS)
        _check_duplicates(frame, ["label"], path)
        periods = []
        for index, row in frame.iterrows():
            try:
                periods.append(PeriodSpec(
                    label=row["label"],
                    votes_start=datetime.date.fromisoformat(row["votes_start"]),
                    votes_end=datetime.date.fromisoformat(row["votes_end"]),
                    likes_date=datetime.date.fromisoformat(row["likes_date"]),
                ))
            except ValueError as exc:
                raise SchemaError(str(exc), path=path, line=_line(index)) from None
        return periods

    @staticmethod
    def summarize(panel: InteractionPanel, group_filter=None) -> List[SummaryBlock]:
        """
        Moyenne, médiane, écart-type (n-1) et effectif par période et métrique.

        Args:
            panel: Panel d'interactions
            group_filter: GroupFilter (toutes les dyades et les opposants si None)

        Returns:
            Liste de SummaryBlock (période, groupe, métrique)
        """
        frame = panel.frame()
        if frame.empty:
            raise EmptyGroup("panel vide")
        groups = [GroupFilter(group_filter)] if group_filter is not None else list(GroupFilter)

        blocks = []
        for period in panel.periods:
            in_period = frame[frame["t"] == period]
            for group in groups:
                subset = in_period if group == GroupFilter.ALL else in_period[in_period["opponents"] == 1]
                if subset.empty:
                    raise EmptyGroup(f"aucune dyade {group.value} pour la période {period}")
                for metric in Metric:
                    values = subset[metric.value].astype(float)
                    std = float(values.std(ddof=1)) if len(values) > 1 else 0.0
                    blocks.append(SummaryBlock(
                        period=period, group=group, metric=metric,
                        mean=float(values.mean()), median=float(values.median()),
                        std_dev=std, n=int(len(values)),
                    ))
        return blocks

    @staticmethod
    def summary_frame(blocks: Sequence[SummaryBlock]) -> pd.DataFrame:
        """Table `period,group,metric,mean,median,std_dev,n`."""
        return pd.DataFrame([
            {"period": b.period, "group": b.group.value, "metric": b.metric.value,
             "mean": b.mean, "median": b.median, "std_dev": b.std_dev, "n": b.n}
            for b in blocks
        ])

    @staticmethod
    def matrices(panel: InteractionPanel, metric=Metric.LIKES,
                 periods: Optional[Sequence[str]] = None) -> List[Tuple[str, np.ndarray]]:
        """
        Matrices non orientées M + Mᵀ par période, nœuds triés par identifiant.

        Args:
            panel: Panel d'interactions
            metric: likes ou votes
            periods: Ordre des périodes (trié par défaut)

        Returns:
            Liste de (période, matrice N×N)
        """
        metric = Metric(metric)
        ids = panel.politicians
        position = {pid: k for k, pid in enumerate(ids)}
        labels = list(periods) if periods is not None else panel.periods
        result = []
        for label in labels:
            matrix = np.zeros((len(ids), len(ids)))
            for row in panel.rows:
                if row.t == label:
                    matrix[position[row.i], position[row.j]] += getattr(row, metric.value)
            result.append((label, matrix + matrix.T))
        return result

    @staticmethod
    def write_panel(panel: InteractionPanel, out_dir) -> Dict[str, Path]:
        """
        Écrit les quatre CSV d'entrée dont la relecture redonne le même panel.

        Returns:
            Dict nom -> chemin écrit
        """
        out = Path(out_dir)
        frame = panel.frame()
        paths = {name: out / filename for name, filename in PANEL_FILES.items()}

        write_csv(pd.DataFrame({
            "period": frame["t"], "liker_id": frame["i"],
            "target_id": frame["j"], "likes": frame["likes"],
        }), paths["likes"])
        write_csv(pd.DataFrame({
            "period": frame["t"], "i": frame["i"],
            "j": frame["j"], "votes_in_favor": frame["votes"],
        }), paths["votes"])
        following = (frame.loc[:, ["i", "j", "following"]]
                     .drop_duplicates(subset=["i", "j"])
                     .sort_values(["i", "j"])
                     .rename(columns={"following": "follows"}))
        write_csv(following, paths["following"])
        write_csv(pd.DataFrame({
            "politician_id": list(panel.coalitions),
            "coalition": list(panel.coalitions.values()),
        }), paths["coalitions"])
        return paths
