"""
Interface en ligne de commande.

    python -m polarisation_likes estimate-ideology --survey enquete.csv
    python -m polarisation_likes simulate --config configs/calibrated_run.yaml
    python -m polarisation_likes simulate --gamma-sweep 0,0.05,0.1,0.15,0.2
    python -m polarisation_likes analyze --likes likes.csv --votes votes.csv --coalitions coalitions.csv
    python -m polarisation_likes summarize ...
    python -m polarisation_likes network ...

Codes de sortie: 0 succès, 2 fichier d'entrée invalide, 3 estimation
impossible, 4 configuration invalide, 5 erreur interne.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from polarisation_likes.calibration import default_politicians
from polarisation_likes.config import RunConfig, load_config, require, write_manifest
from polarisation_likes.econometrics import RegressionEngine
from polarisation_likes.enums import ElectorateKind, GammaMode, Metric
from polarisation_likes.errors import EmptyGraph, PolarisationError, SchemaError, ZeroVariance
from polarisation_likes.exports import write_csv, write_dot, write_graphml, write_lines
from polarisation_likes.ideology import IdeologyEstimator
from polarisation_likes.ingest import InteractionPanel, PanelLoader
from polarisation_likes.networks import NetworkEngine
from polarisation_likes.rng import derive_seed
from polarisation_likes.signaling import LikeMatrix, SignalingEngine, SimulationConfig
from polarisation_likes.spatial import Electorate, Politician, SpatialEngine

logger = logging.getLogger("polarisation_likes")

EXIT_OK = 0
EXIT_INTERNAL = 5
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


def _float_list(text: str) -> List[float]:
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"liste de réels attendue: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    """Construit l'analyseur d'arguments et ses sous-commandes."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Fichier de configuration YAML")
    common.add_argument("--seed", type=int, help="Graine racine")
    common.add_argument("--out-dir", dest="out_dir", help="Dossier de sortie")
    common.add_argument("--theta", type=float, help="Seuil de corrélation des réseaux")
    common.add_argument("--method", choices=["louvain", "edge_betweenness"],
                        help="Méthode de détection de communautés")
    common.add_argument("--cov-type", dest="cov_type", choices=["classical", "robust"],
                        help="Écarts-types des régressions")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Journal détaillé")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Avertissements seulement")

    panel = argparse.ArgumentParser(add_help=False)
    panel.add_argument("--likes", help="CSV period,liker_id,target_id,likes")
    panel.add_argument("--votes", help="CSV period,i,j,votes_in_favor")
    panel.add_argument("--following", help="CSV i,j,follows")
    panel.add_argument("--coalitions", help="CSV politician_id,coalition")
    panel.add_argument("--periods", help="CSV label,votes_start,votes_end,likes_date")
    panel.add_argument("--metric", choices=["likes", "votes"], help="Matrice utilisée pour les réseaux")

    parser = argparse.ArgumentParser(
        prog="polarisation_likes",
        description="Simulation et analyse de la polarisation des likes entre politiciens",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    estimate = subparsers.add_parser("estimate-ideology", parents=[common],
                                     help="Estime (μ, σ) des politiciens depuis une enquête")
    estimate.add_argument("--survey", help="CSV respondent_id,self_ideology,politician_id,opinion")
    estimate.add_argument("--output", help="CSV de sortie (out_dir/ideology_estimates.csv par défaut)")
    estimate.add_argument("--skip-invalid", dest="skip_invalid", action="store_true", default=None,
                          help="Ignore les politiciens non estimables au lieu d'échouer")

    simulate = subparsers.add_parser("simulate", parents=[common],
                                     help="Simule les likes du modèle calibré")
    simulate.add_argument("--gamma", type=float, help="γ homogène (active le mode homogène)")
    simulate.add_argument("--gamma-sweep", dest="gamma_sweep", type=_float_list,
                          help="Balayage de γ homogènes, ex. 0,0.05,0.1")
    simulate.add_argument("--omega", type=float, help="Poids du signal ω")
    simulate.add_argument("--messages", type=int, help="Messages par politicien")
    simulate.add_argument("--politicians", dest="politicians_file",
                          help="CSV d'estimations à utiliser à la place de la calibration")

    subparsers.add_parser("analyze", parents=[common, panel],
                          help="Statistiques, réseaux et régressions d'un panel")
    subparsers.add_parser("summarize", parents=[common, panel],
                          help="Statistiques descriptives d'un panel")
    subparsers.add_parser("network", parents=[common, panel],
                          help="Réseaux et modularité par période")
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    """Configure le journal de la ligne de commande."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger("polarisation_likes").setLevel(level)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Fusionne le fichier de configuration et les options explicites."""
    overrides = {
        name: getattr(args, name, None)
        for name in ("seed", "out_dir", "theta", "method", "cov_type", "omega", "messages",
                     "gamma_sweep", "politicians_file", "survey", "skip_invalid", "likes", "votes",
                     "following", "coalitions", "periods", "metric")
    }
    if getattr(args, "gamma", None) is not None:
        overrides["gamma"] = args.gamma
        overrides["gamma_mode"] = GammaMode.HOMOGENEOUS.value
    return load_config(args.config, overrides)


def electorate_family(config: RunConfig) -> Dict[str, Electorate]:
    """
    Les trois électorats de la configuration: l'empirique et les deux normaux
    (moments de l'empirique sauf si mean/std sont fixés).

    Returns:
        Dict valeur d'ElectorateKind -> Electorate
    """
    spec = config.electorate
    empirical = SpatialEngine.make_electorate(
        ElectorateKind.EMPIRICAL_DISCRETE, {"shares": spec.shares, "null_share": spec.null_share}
    )
    mean, std = SpatialEngine.electorate_moments(empirical)
    params = {
        "mean": spec.mean if spec.mean is not None else mean,
        "std": spec.std if spec.std is not None else std,
        "grid_points": spec.grid_points,
    }
    return {
        ElectorateKind.EMPIRICAL_DISCRETE.value: empirical,
        ElectorateKind.NORMAL_DISCRETE.value:
            SpatialEngine.make_electorate(ElectorateKind.NORMAL_DISCRETE, params),
        ElectorateKind.NORMAL_CONTINUOUS.value:
            SpatialEngine.make_electorate(ElectorateKind.NORMAL_CONTINUOUS, params),
    }


def build_politicians(config: RunConfig) -> List[Politician]:
    """Politiciens du fichier d'estimations, ou la calibration par défaut."""
    if config.politicians_file is None:
        return default_politicians(config.n_coalitions)
    estimates = IdeologyEstimator.read_estimates(config.politicians_file)
    politicians = [Politician(id=e.politician_id, mu=e.mu, sigma=e.sigma) for e in estimates]
    return SpatialEngine.assign_coalitions(politicians, config.n_coalitions)


def simulation_config(config: RunConfig) -> SimulationConfig:
    return SimulationConfig(
        omega=config.omega,
        messages_per_politician=config.messages,
        seed=config.seed,
        gamma_mode=config.gamma_mode,
        gamma=config.gamma,
        gamma_mean=config.gamma_mean,
        gamma_sd=config.gamma_sd,
    )


def export_graph(graph, partition, coalitions, out: Path, stem: str):
    """Écrit un réseau annoté en GraphML et en DOT."""
    annotated = NetworkEngine.annotate(graph, partition, coalitions)
    write_graphml(annotated, out / f"{stem}.graphml")
    write_dot(annotated, out / f"{stem}.dot")


def modularity_frame(rows: Sequence, method: str) -> pd.DataFrame:
    return pd.DataFrame([{"label": label, "method": method, "Q": q} for label, q in rows],
                        columns=["label", "method", "Q"])


def cmd_estimate_ideology(config: RunConfig, output: Optional[str] = None) -> int:
    """Estime les idéologies et écrit `politician_id,beta,beta_se,mu,sigma`."""
    require(config, "survey")
    out = Path(config.out_dir)
    write_manifest(config)
    survey = IdeologyEstimator.read_survey(config.survey)
    estimates = IdeologyEstimator.estimate_all(survey, config.skip_invalid)
    target = Path(output) if output else out / "ideology_estimates.csv"
    write_csv(IdeologyEstimator.to_frame(estimates), target)
    logger.info("✅ %d estimations écrites dans %s", len(estimates), target)
    return EXIT_OK


def _analyze_likes(like_matrix: LikeMatrix, config: RunConfig, label: str):
    """Réseau de corrélation d'une matrice simulée."""
    return NetworkEngine.analyze_matrix(
        like_matrix.symmetrized(), config.theta, config.method,
        derive_seed(config.seed, "louvain"), labels=like_matrix.ids,
    )


def cmd_simulate(config: RunConfig) -> int:
    """
    Compétition, simulation des likes, régression simulée, réseaux et
    modularité (éventuellement sur un balayage de γ).
    """
    out = Path(config.out_dir)
    write_manifest(config)

    electorates = electorate_family(config)
    electorate = electorates[config.electorate.kind]
    politicians = build_politicians(config)
    coalitions = {p.id: p.coalition for p in politicians}
    sim_config = simulation_config(config)

    write_csv(pd.DataFrame(SpatialEngine.target_table(politicians, electorates)),
              out / "targets.csv")

    like_matrix = SignalingEngine.simulate(politicians, electorate, sim_config, config.n_coalitions)
    write_csv(like_matrix.to_frame(), out / "likes.csv")
    dyads = SignalingEngine.dyad_table(like_matrix)
    write_csv(dyads, out / "dyads.csv")

    regression = RegressionEngine.simulated_regression(dyads, config.cov_type)
    write_csv(regression.to_frame(), out / "regression.csv")
    try:
        residuals = RegressionEngine.residual_pc1_table(dyads, regression, like_matrix.politicians)
        write_csv(residuals, out / "residual_pc1.csv")
    except ZeroVariance:
        logger.warning("⚠️ γ identique pour tous: residual_pc1.csv non écrit")

    series = []
    if config.gamma_sweep:
        sweep = SignalingEngine.gamma_sweep(politicians, electorate, sim_config,
                                            config.gamma_sweep, config.n_coalitions)
        shares = []
        for gamma, matrix in sweep.items():
            label = f"gamma={gamma:g}"
            graph, partition, q = _analyze_likes(matrix, config, label)
            export_graph(graph, partition, coalitions, out, f"network_gamma_{gamma:g}")
            write_csv(matrix.to_frame(), out / f"likes_gamma_{gamma:g}.csv")
            series.append((label, q))
            shares.append({"gamma": gamma, "likes": matrix.total,
                           "cross_coalition_share": SignalingEngine.cross_coalition_share(matrix)})
        write_csv(pd.DataFrame(shares), out / "sweep.csv")
    else:
        label = GammaMode(config.gamma_mode).value
        graph, partition, q = _analyze_likes(like_matrix, config, label)
        export_graph(graph, partition, coalitions, out, "network")
        series.append((label, q))

    write_csv(modularity_frame(series, config.method), out / "modularity.csv")
    logger.info("✅ Simulation terminée: β=%.3f (t=%.2f), résultats dans %s",
                regression.coefficients["opponents"], regression.tstats["opponents"], out)
    return EXIT_OK


def _load_panel(config: RunConfig) -> InteractionPanel:
    require(config, "likes", "votes", "coalitions")
    panel = PanelLoader.load_panel(config.likes, config.votes, config.following, config.coalitions)
    write_lines(panel.join_report, Path(config.out_dir) / "join_report.txt")
    return panel


def _period_order(config: RunConfig, panel: InteractionPanel) -> List[str]:
    """Ordre des périodes: celui du fichier des périodes s'il est fourni."""
    if config.periods is None:
        return panel.periods
    labels = [p.label for p in PanelLoader.load_periods(config.periods)]
    unknown = sorted(set(panel.periods) - set(labels))
    if unknown:
        raise SchemaError(f"périodes absentes du fichier des périodes: {unknown}", path=config.periods)
    return [label for label in labels if label in set(panel.periods)]


def _summarize(config: RunConfig, panel: InteractionPanel):
    blocks = PanelLoader.summarize(panel)
    write_csv(PanelLoader.summary_frame(blocks), Path(config.out_dir) / "summary.csv")


def _networks(config: RunConfig, panel: InteractionPanel):
    out = Path(config.out_dir)
    seed = derive_seed(config.seed, "louvain")
    series = []
    for label, matrix in PanelLoader.matrices(panel, Metric(config.metric), _period_order(config, panel)):
        try:
            graph, partition, q = NetworkEngine.analyze_matrix(
                matrix, config.theta, config.method, seed, labels=panel.politicians
            )
        except EmptyGraph:
            logger.warning("⚠️ Période %s: aucune arête au-dessus de θ=%.3f, Q indéfini",
                           label, config.theta)
            graph = NetworkEngine.correlation_network(matrix, config.theta, panel.politicians)
            partition, q = None, float("nan")
        export_graph(graph, partition, panel.coalitions, out, f"network_{label}")
        series.append((label, q))
    write_csv(modularity_frame(series, config.method), out / "modularity.csv")


def cmd_summarize(config: RunConfig) -> int:
    """Statistiques descriptives par période."""
    write_manifest(config)
    _summarize(config, _load_panel(config))
    logger.info("✅ Statistiques écrites dans %s", config.out_dir)
    return EXIT_OK


def cmd_network(config: RunConfig) -> int:
    """Réseaux de corrélation et modularité par période."""
    write_manifest(config)
    _networks(config, _load_panel(config))
    logger.info("✅ Réseaux écrits dans %s", config.out_dir)
    return EXIT_OK


def cmd_analyze(config: RunConfig) -> int:
    """Statistiques, réseaux par période et les neuf régressions en panel."""
    write_manifest(config)
    panel = _load_panel(config)
    _summarize(config, panel)
    _networks(config, panel)
    out = Path(config.out_dir)
    for column, result in RegressionEngine.table_regressions(panel.rows, cov_type=config.cov_type).items():
        write_csv(result.to_frame(), out / f"regression_col{column}.csv")
    logger.info("✅ Analyse terminée, résultats dans %s", out)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "summarize": cmd_summarize,
    "network": cmd_network,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Point d'entrée de la ligne de commande.

    Args:
        argv: Arguments (sys.argv[1:] par défaut)

    Returns:
        Code de sortie
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = resolve_config(args)
        if args.command == "estimate-ideology":
            return cmd_estimate_ideology(config, args.output)
        return COMMANDS[args.command](config)
    except PolarisationError as exc:
        logger.error("❌ %s", exc)
        return exc.exit_code
    except Exception:
        logger.exception("❌ Erreur interne")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
