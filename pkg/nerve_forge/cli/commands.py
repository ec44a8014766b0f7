"""
Interface de linha de comando do Nerve Forge
"""
import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.config import settings
from ..core.exceptions import NerveForgeError
from ..models.combinatorics import GraphSpec, Partition
from ..models.geometry import PointSet
from ..models.schemas import ErrorResponse, Outcome, RunReport, VerificationStatus
from ..services.acceptance import acceptance_runner
from ..services.configs import RandomMode, config_service
from ..services.cyclebuild import cycle_builder
from ..services.exactgeom import exact_geometry
from ..services.file_processor import file_processor, inputs_digest
from ..services.nervecalc import nerve_service
from ..services.report_storage import report_storage
from ..services.subsetfind import subset_finder
from ..services.svg_renderer import svg_renderer
from ..services.treebuild import tree_builder

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FOUND = 2

NAMED_GRAPHS = ["path:N", "cycle:N", "star:N", "spider:LxK", "convex-obstruction"]


@dataclass
class CommandResult:
    """Resultado de um subcomando antes de virar RunReport"""

    outcome: Outcome
    partition: Optional[Partition] = None
    verification: VerificationStatus = VerificationStatus.NONE
    details: Dict[str, Any] = field(default_factory=dict)
    inputs: Dict[str, Any] = field(default_factory=dict)
    record: bool = True  # grava em output_dir/reports


# Entradas

def _load_points(args: argparse.Namespace) -> PointSet:
    if args.points:
        return file_processor.load_points(args.points)
    if args.builtin:
        return config_service.builtin_config(args.builtin)
    if args.random:
        return config_service.random_points(args.random, args.dim or 2, seed=args.seed, mode=args.mode)
    raise NerveForgeError("Informe --points, --builtin ou --random")


def _load_graph(args: argparse.Namespace) -> GraphSpec:
    if args.graph:
        return file_processor.load_graph(args.graph)
    if args.named:
        try:
            return GraphSpec.parse(args.named)
        except ValueError as e:
            raise NerveForgeError(str(e)) from None
    raise NerveForgeError("Informe --graph ou --named")


def _inputs(args: argparse.Namespace, ps: Optional[PointSet] = None, **extra) -> Dict[str, Any]:
    payload = {k: v for k, v in vars(args).items() if k != "handler"}
    if ps is not None:
        payload["point_set"] = file_processor.points_to_data(ps)
    payload.update(extra)
    return payload


def _verified(ps: PointSet, partition: Partition, target: GraphSpec) -> VerificationStatus:
    ok, _ = nerve_service.verify_partition(ps, partition, target)
    return VerificationStatus.PASS if ok else VerificationStatus.FAIL


def _finish_construction(args, ps: PointSet, partition: Partition, target: GraphSpec) -> CommandResult:
    if args.out:
        file_processor.save_partition(partition, args.out)
    return CommandResult(
        outcome=Outcome.FOUND,
        partition=partition,
        verification=_verified(ps, partition, target),
        details={"target": file_processor.graph_to_data(target), "points": len(ps), "dim": ps.dim},
        inputs=_inputs(args, ps),
    )


# Subcomandos

def cmd_construct(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    if args.kind in ("star", "cycle") and not args.n:
        raise NerveForgeError(f"'construct {args.kind}' exige --n")
    if args.kind == "tree":
        target = _load_graph(args)
        partition = tree_builder.tverberg_tree_pipeline(target, ps, d=args.dim)
    elif args.kind == "caterpillar":
        target = _load_graph(args)
        partition = tree_builder.caterpillar_partition(target, ps, d=args.dim)
    elif args.kind == "star":
        target = GraphSpec.star(args.n)
        partition = tree_builder.star_partition_2d(ps, args.n)
    else:
        target = GraphSpec.cycle(args.n)
        seed = args.projection_seed if args.projection_seed is not None else args.seed
        partition = cycle_builder.cycle_partition(args.n, ps, relaxed=args.relaxed, seed=seed)
    return _finish_construction(args, ps, partition, target)


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    partition = file_processor.load_partition(args.partition, size=len(ps))
    target = _load_graph(args)
    ok, graph = nerve_service.verify_partition(ps, partition, target)
    _, mapping = nerve_service.graphs_isomorphic(graph, target)
    return CommandResult(
        outcome=Outcome.FOUND if ok else Outcome.NOT_FOUND,
        partition=partition,
        verification=VerificationStatus.PASS if ok else VerificationStatus.FAIL,
        details={"intersection_graph": sorted(graph.edges),
                 "isomorphism": {str(k): v for k, v in sorted(mapping.items())} if mapping else None},
        inputs=_inputs(args, ps),
    )


def cmd_search(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    target = _load_graph(args)
    parts = args.parts or target.n
    outcome = nerve_service.is_partition_induced(target, ps, parts, budget=args.budget, prune=not args.no_prune,
                                                 workers=args.workers, audit=args.audit)
    details = {"leaves": outcome.leaves, "nodes": outcome.nodes, "pruned": outcome.pruned,
               "search_elapsed": round(outcome.elapsed, 4)}
    if outcome.found and args.out:
        file_processor.save_partition(outcome.partition, args.out)
    return CommandResult(
        outcome=Outcome.FOUND if outcome.found else Outcome.NOT_FOUND,
        partition=outcome.partition,
        verification=_verified(ps, outcome.partition, target) if outcome.found else VerificationStatus.NONE,
        details=details,
        inputs=_inputs(args, ps),
    )


def cmd_nerve(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    partition = file_processor.load_partition(args.partition, size=len(ps))
    if args.graph_only:
        graph = nerve_service.intersection_graph(ps, partition)
        details = {"edges": sorted(graph.edges)}
    else:
        nerve = nerve_service.nerve_complex(ps, partition, max_face_dim=args.max_face_dim)
        sizes = sorted({len(f) for f in nerve.faces})
        details = {"edges": nerve.faces_of_size(2),
                   "faces": {str(k): nerve.faces_of_size(k) for k in sizes if k >= 3}}
    return CommandResult(outcome=Outcome.FOUND, partition=partition, details=details, inputs=_inputs(args, ps))


def cmd_subset(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    details: Dict[str, Any] = {"size": args.size}
    if args.kind == "convex":
        subset = subset_finder.find_convex_subset_2d(ps, args.size)
        ok = subset is not None and exact_geometry.in_convex_position(ps, subset)
    else:
        found = subset_finder.find_cyclic_subpolytope(ps, args.size, budget=args.budget)
        subset = None
        ok = False
        if found is not None:
            subset, orientation = found
            details["orientation"] = orientation
            ok = exact_geometry.chirotope(ps.subset(subset)).uniform_sign() == 1
    details["subset"] = subset
    return CommandResult(
        outcome=Outcome.FOUND if subset is not None else Outcome.NOT_FOUND,
        verification=(VerificationStatus.PASS if ok else VerificationStatus.FAIL) if subset is not None
        else VerificationStatus.NONE,
        details=details,
        inputs=_inputs(args, ps),
    )


def cmd_render(args: argparse.Namespace) -> CommandResult:
    ps = _load_points(args)
    partition = file_processor.load_partition(args.partition, size=len(ps))
    out = args.out or Path(settings.output_dir) / "partition.svg"
    path = svg_renderer.emit_svg(ps, partition, out, projection_seed=args.projection_seed)
    return CommandResult(outcome=Outcome.FOUND, partition=partition, details={"svg": str(path)},
                         inputs=_inputs(args, ps))


def cmd_acceptance(args: argparse.Namespace) -> CommandResult:
    scale = 0.05 if args.quick else args.scale
    if args.experiment:
        result = acceptance_runner.run_experiment(args.experiment, scale=scale)
        return CommandResult(
            outcome=Outcome.FOUND if result.passed else Outcome.ERROR,
            verification=VerificationStatus.PASS if result.passed else VerificationStatus.FAIL,
            details={"experiment": result.model_dump()},
            inputs=_inputs(args),
        )
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = acceptance_runner.run(scale=scale, only=only)
    passed = all(r.passed for r in results)
    return CommandResult(
        outcome=Outcome.FOUND if passed else Outcome.ERROR,
        verification=VerificationStatus.PASS if passed else VerificationStatus.FAIL,
        details={"criteria": [r.model_dump() for r in results]},
        inputs=_inputs(args),
    )


def cmd_generate(args: argparse.Namespace) -> CommandResult:
    ps = config_service.random_points(args.n, args.dim or 2, seed=args.seed, mode=args.mode,
                                      extra_interior=args.extra_interior)
    details: Dict[str, Any] = {"points": len(ps), "dim": ps.dim}
    if args.out:
        details["path"] = str(file_processor.save_points(ps, args.out))
    else:
        details["point_set"] = file_processor.points_to_data(ps)
    return CommandResult(outcome=Outcome.FOUND, details=details, inputs=_inputs(args))


def cmd_graphs(args: argparse.Namespace) -> CommandResult:
    counts: Dict[str, int] = {}
    for t in config_service.all_trees(args.max_n):
        counts[str(t.n)] = counts.get(str(t.n), 0) + 1
    details = {"named": NAMED_GRAPHS, "trees": counts, "builtins": config_service.builtin_names()}
    return CommandResult(outcome=Outcome.FOUND, details=details, inputs=_inputs(args))


def cmd_reports(args: argparse.Namespace) -> CommandResult:
    """Consulta os relatórios gravados; não gera relatório próprio"""
    if args.action == "stats":
        details: Dict[str, Any] = report_storage.get_stats().model_dump()
    elif args.action == "show":
        if not args.id:
            raise NerveForgeError("'reports show' exige --id")
        report = report_storage.get_report(args.id)
        if report is None:
            return CommandResult(outcome=Outcome.NOT_FOUND, details={"id": args.id}, inputs=_inputs(args),
                                 record=False)
        details = {"report": report.model_dump(mode="json")}
    elif args.action == "clear":
        details = {"removed": report_storage.clear_history()}
    else:
        details = {"reports": [{"id": r.id, "command": r.command, "outcome": r.outcome.value,
                                "timestamp": r.timestamp.isoformat()}
                               for r in report_storage.get_history(args.limit)]}
    details["directory"] = str(report_storage.directory)
    return CommandResult(outcome=Outcome.FOUND, details=details, inputs=_inputs(args), record=False)


# Parser

def _add_point_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--points", help="Arquivo JSON de pontos")
    parser.add_argument("--builtin", choices=config_service.builtin_names(), help="Configuração embutida")
    parser.add_argument("--random", type=int, metavar="N", help="Gera N pontos aleatórios")
    parser.add_argument("--mode", default=RandomMode.UNIFORM_BOX.value, choices=[m.value for m in RandomMode])


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", help="Arquivo JSON do grafo alvo")
    parser.add_argument("--named", help="Grafo nomeado: path:4, cycle:5, star:6, spider:3x2")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Semente (padrão NERVE_FORGE_SEED)")
    common.add_argument("--budget", type=int, default=None, help="Limite de partições/subconjuntos enumerados")
    common.add_argument("--dim", type=int, default=None, help="Dimensão")
    common.add_argument("--verbose", action="store_true", help="Logs em nível DEBUG")

    parser = argparse.ArgumentParser(prog="nerve-forge",
                                     description="Partições de Tverberg com nervo prescrito em aritmética exata")
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", parents=[common], help="Constrói uma partição")
    construct.add_argument("kind", choices=["tree", "cycle", "star", "caterpillar"])
    _add_point_source(construct)
    _add_graph_source(construct)
    construct.add_argument("--n", type=int, help="Número de partes (estrela/ciclo)")
    construct.add_argument("--relaxed", action="store_true", help="Ciclo com contagem relaxada")
    construct.add_argument("--projection-seed", type=int, default=None)
    construct.add_argument("--out", help="Arquivo de saída da partição")
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser("verify", parents=[common], help="Confere se o grafo de interseção é isomorfo ao alvo")
    _add_point_source(verify)
    _add_graph_source(verify)
    verify.add_argument("--partition", required=True)
    verify.set_defaults(handler=cmd_verify)

    search = sub.add_parser("search", parents=[common], help="Busca exaustiva de partição induzida")
    _add_point_source(search)
    _add_graph_source(search)
    search.add_argument("--parts", type=int, default=None)
    search.add_argument("--no-prune", action="store_true")
    search.add_argument("--audit", action="store_true", help="Repete um NotFound em ordem invertida")
    search.add_argument("--workers", type=int, default=None)
    search.add_argument("--out", help="Arquivo de saída da partição encontrada")
    search.set_defaults(handler=cmd_search)

    nerve = sub.add_parser("nerve", parents=[common], help="Grafo de interseção e nervo")
    _add_point_source(nerve)
    nerve.add_argument("--partition", required=True)
    nerve.add_argument("--max-face-dim", type=int, default=None)
    nerve.add_argument("--graph-only", action="store_true")
    nerve.set_defaults(handler=cmd_nerve)

    subset = sub.add_parser("subset", parents=[common], help="Subconjunto convexo ou cíclico")
    subset.add_argument("kind", choices=["convex", "cyclic"])
    _add_point_source(subset)
    subset.add_argument("--size", type=int, required=True)
    subset.set_defaults(handler=cmd_subset)

    render = sub.add_parser("render", parents=[common], help="Desenha a partição em SVG")
    _add_point_source(render)
    render.add_argument("--partition", required=True)
    render.add_argument("--out", default=None, help="Arquivo SVG (padrão output_dir/partition.svg)")
    render.add_argument("--projection-seed", type=int, default=None)
    render.set_defaults(handler=cmd_render)

    acceptance = sub.add_parser("acceptance", parents=[common], help="Suíte de aceitação")
    acceptance.add_argument("--quick", action="store_true", help="Escala 0.05")
    acceptance.add_argument("--scale", type=float, default=None)
    acceptance.add_argument("--only", help="Critérios separados por vírgula, ex.: 1,8,12")
    acceptance.add_argument("--experiment", choices=sorted(acceptance_runner.experiments()),
                            help="Experimento nomeado em vez dos critérios")
    acceptance.set_defaults(handler=cmd_acceptance)

    generate = sub.add_parser("generate", parents=[common], help="Gera pontos aleatórios")
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--mode", default=RandomMode.UNIFORM_BOX.value, choices=[m.value for m in RandomMode])
    generate.add_argument("--extra-interior", type=int, default=0)
    generate.add_argument("--out")
    generate.set_defaults(handler=cmd_generate)

    graphs = sub.add_parser("graphs", parents=[common], help="Grafos nomeados e catálogo de árvores")
    graphs.add_argument("--max-n", type=int, default=7)
    graphs.set_defaults(handler=cmd_graphs)

    reports = sub.add_parser("reports", parents=[common], help="Relatórios gravados em output_dir/reports")
    reports.add_argument("action", choices=["list", "stats", "show", "clear"])
    reports.add_argument("--id", help="ID do relatório (show)")
    reports.add_argument("--limit", type=int, default=20)
    reports.set_defaults(handler=cmd_reports)
    return parser


def _exit_code(report: RunReport) -> int:
    """0 encontrado, 2 negativo honesto, 1 erro ou construção reprovada"""
    if report.outcome == Outcome.NOT_FOUND:
        return EXIT_NOT_FOUND
    if report.outcome == Outcome.ERROR or report.verification == VerificationStatus.FAIL:
        return EXIT_ERROR
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """Executa um subcomando; imprime o RunReport em stdout e devolve o código de saída"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    logger.info(f"Executando '{args.command}'")
    start = time.perf_counter()
    try:
        result = args.handler(args)
    except NerveForgeError as e:
        logger.error(f"Erro em '{args.command}': {e.message}")
        if args.command != "reports":
            report_storage.store_report(RunReport(
                command=args.command, inputs_digest=inputs_digest(_inputs(args)), outcome=Outcome.ERROR,
                elapsed=time.perf_counter() - start, details={"error": e.message, "kind": type(e).__name__},
            ))
        detail = json.loads(json.dumps(e.detail, default=str)) if e.detail is not None else None
        error = ErrorResponse(error=e.message, kind=type(e).__name__, detail=detail)
        print(error.model_dump_json(indent=2), file=sys.stderr)
        return EXIT_ERROR

    partition = result.partition
    report = RunReport(
        command=args.command,
        inputs_digest=inputs_digest(result.inputs),
        outcome=result.outcome,
        n_parts=partition.n_parts if partition else None,
        partition=list(partition.assignment) if partition else None,
        verification=result.verification,
        elapsed=time.perf_counter() - start,
        details=result.details,
    )
    if result.record:
        report_storage.store_report(report)
    print(json.dumps(report.model_dump(mode="json"), indent=2))
    logger.info(f"'{args.command}' concluído - {report.outcome.value}, verificação {report.verification.value}")
    return _exit_code(report)
