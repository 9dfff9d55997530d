#!/usr/bin/env python3
"""
CLI Tool for hypergraph Hamilton cycle and perfect matching packing

Generates random uniform hypergraphs, packs them with edge-disjoint type-ell
Hamilton cycles or perfect matchings, validates packings and audits the
pseudo-randomness properties the construction relies on.
"""

import argparse
import sys
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

from src.exceptions import InvalidInputError, PackingException
from src.models.config import AuditConfig, GenerateSource, RunConfig
from src.models.cycles import HyperMatching, PackingKind, PackingResult
from src.packing_service import PackingService
from src.services import (
    AuditService,
    AuxGraphService,
    ConfigService,
    CycleService,
    HypergraphService,
    MatchingService,
    ReportService,
)
from src.utils.logger import setup_logging, get_logger


class HyperpackCLI:
    """CLI для упаковки гиперграфов"""

    def __init__(self):
        self.logger = get_logger()
        self.config_service = ConfigService()
        self.hypergraph_service = HypergraphService()
        self.cycle_service = CycleService()
        self.report_service = ReportService()

    def generate(self, n: int, k: int, p: float, seed: int, out: Optional[str]) -> int:
        """Генерация случайного гиперграфа H(n, p, k)"""
        source = GenerateSource(n=n, k=k, p=p, seed=seed)
        hypergraph = self.hypergraph_service.generate_hnpk(source.n, source.k, source.p, source.seed)
        if out:
            self.hypergraph_service.save(hypergraph, out)
        else:
            sys.stdout.write(self.hypergraph_service.write_hypergraph(hypergraph))
        return 0

    def build_run_config(self, args: argparse.Namespace) -> RunConfig:
        """Собрать RunConfig из файла конфигурации и флагов (флаги важнее)"""
        overrides = {
            'ell': args.ell,
            'input': args.input,
            'generate': asdict(GenerateSource.parse(args.gen, args.seed or 0)) if args.gen else None,
            'mode': args.mode,
            'regime': args.regime,
            'r': args.r,
            'f0': args.f0,
            'eps': args.eps,
            'seed': args.seed,
            'max_instances': args.max_instances,
            'workers': args.workers,
            'cycles_out': args.cycles_out,
            'report_out': args.report_out,
            'metrics_out': args.metrics_out,
            'include_timings': False if args.no_timings else None,
            'audit': asdict(AuditConfig.parse(args.audit)) if args.audit else None,
        }
        if args.config:
            return self.config_service.load_config(args.config, overrides)
        return RunConfig.from_dict({key: value for key, value in overrides.items() if value is not None})

    def pack(self, args: argparse.Namespace) -> int:
        """Запуск упаковки"""
        config = self.build_run_config(args)
        _, report = PackingService(report_service=self.report_service).run_packing(config)
        if not config.report_out:
            sys.stdout.write(self.report_service.emit_report(report, include_timings=config.include_timings))
        return 0

    def validate(self, input_path: str, cycles_path: str) -> int:
        """Проверка файла упаковки против гиперграфа"""
        hypergraph = self.hypergraph_service.load(input_path)
        if not Path(cycles_path).exists():
            raise InvalidInputError(f"Packing file not found: {cycles_path}")
        with open(cycles_path, 'r', encoding='utf-8') as f:
            items = self.cycle_service.parse_packing(f)

        matchings = [isinstance(item, HyperMatching) for item in items]
        if items and any(matchings) and not all(matchings):
            raise InvalidInputError("Packing file mixes cycles and matchings")
        kind = PackingKind.MATCHINGS if items and all(matchings) else PackingKind.CYCLES
        ell = hypergraph.k if kind is PackingKind.MATCHINGS else (items[0].ell if items else hypergraph.k)
        result = PackingResult(kind=kind, n=hypergraph.n, k=hypergraph.k, ell=ell,
                               source_edges=hypergraph.m, items=tuple(items))
        verdict = self.cycle_service.verify_packing(hypergraph, result)
        print(verdict.describe())
        if not verdict.ok:
            self.logger.error("Packing is invalid", verdict=verdict.describe())
            return InvalidInputError.exit_code
        self.logger.info("Packing is valid", items=len(items), coverage=result.coverage)
        return 0

    def audit(self, input_path: str, ell: int, eps: float, samples: Optional[int],
              report_out: Optional[str], seed: int) -> int:
        """Аудит свойств псевдослучайности гиперграфа"""
        hypergraph = self.hypergraph_service.load(input_path)
        audit_service = AuditService()
        if hypergraph.k == 2 * ell:
            audits = [audit_service.audit_hypergraph_regularity(
                hypergraph, ell, eps, budget=samples or 1000, seed=seed,
            )]
        else:
            audits = audit_service.audit_degree_properties(
                hypergraph, ell, eps,
                mode="sampled" if samples else "exact",
                samples=samples or 1000, seed=seed,
            )
        document = self.report_service.emit_audits(audits)
        if report_out:
            with open(report_out, 'w', encoding='utf-8') as f:
                f.write(document)
        else:
            sys.stdout.write(document)
        return 0

    def oracle_pm(self, input_path: str) -> int:
        """Сравнение переборного оракула с потоковым оптимумом"""
        graph = AuxGraphService().load_bipartite(input_path)
        matching_service = MatchingService()
        oracle = matching_service.brute_force_pm_oracle(graph)
        flow = matching_service.max_disjoint_pm_flow(graph).t
        print(f"oracle {oracle}")
        print(f"flow {flow}")
        return 0


def _add_logging_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--log-level', default='INFO', help='Уровень логирования')
    parser.add_argument('--log-format', default='json', choices=['json', 'console'], help='Формат логирования')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Hypergraph cycle and matching packing CLI')
    subparsers = parser.add_subparsers(dest='command', help='Доступные команды')

    # Команда gen
    gen_parser = subparsers.add_parser('gen', help='Генерация случайного гиперграфа')
    gen_parser.add_argument('--n', type=int, required=True, help='Число вершин')
    gen_parser.add_argument('--k', type=int, required=True, help='Размер ребра')
    gen_parser.add_argument('--p', type=float, required=True, help='Вероятность ребра')
    gen_parser.add_argument('--seed', type=int, default=0, help='Зерно генератора')
    gen_parser.add_argument('--out', help='Файл для записи гиперграфа')
    _add_logging_arguments(gen_parser)

    # Команда pack
    pack_parser = subparsers.add_parser('pack', help='Упаковка циклами или паросочетаниями')
    source = pack_parser.add_mutually_exclusive_group()
    source.add_argument('--in', dest='input', help='Файл гиперграфа')
    source.add_argument('--gen', help='Сгенерировать гиперграф: n,k,p')
    pack_parser.add_argument('--config', help='Файл конфигурации (JSON или YAML)')
    pack_parser.add_argument('--ell', type=int, help='Шаг цикла')
    pack_parser.add_argument('--mode', choices=['bipartition-cycle', 'full-partition', 'matching'],
                             help='Режим разбиения (по умолчанию выводится из k и ell)')
    pack_parser.add_argument('--regime', choices=['random', 'pseudo-random'], help='Формулы параметров')
    pack_parser.add_argument('--r', type=int, help='Число экземпляров разбиения')
    pack_parser.add_argument('--f0', type=float, help='Порог f0')
    pack_parser.add_argument('--eps', type=float, help='Параметр eps')
    pack_parser.add_argument('--seed', type=int, help='Главное зерно')
    pack_parser.add_argument('--max-instances', type=int, help='Верхняя граница числа экземпляров')
    pack_parser.add_argument('--workers', type=int, help='Число рабочих потоков')
    pack_parser.add_argument('--cycles-out', help='Файл для записи упаковки')
    pack_parser.add_argument('--report-out', help='Файл для JSON отчета')
    pack_parser.add_argument('--metrics-out', help='Файл для метрик Prometheus')
    pack_parser.add_argument('--audit', help='Аудит: exact или sampled:COUNT')
    pack_parser.add_argument('--no-timings', action='store_true', help='Не записывать время стадий')
    _add_logging_arguments(pack_parser)

    # Команда validate
    validate_parser = subparsers.add_parser('validate', help='Проверка упаковки')
    validate_parser.add_argument('--in', dest='input', required=True, help='Файл гиперграфа')
    validate_parser.add_argument('--cycles', required=True, help='Файл упаковки')
    _add_logging_arguments(validate_parser)

    # Команда audit
    audit_parser = subparsers.add_parser('audit', help='Аудит свойств гиперграфа')
    audit_parser.add_argument('--in', dest='input', required=True, help='Файл гиперграфа')
    audit_parser.add_argument('--ell', type=int, required=True, help='Шаг цикла')
    audit_parser.add_argument('--eps', type=float, default=0.2, help='Параметр eps')
    audit_parser.add_argument('--samples', type=int, help='Размер выборки (без флага полный перебор)')
    audit_parser.add_argument('--seed', type=int, default=0, help='Зерно выборки')
    audit_parser.add_argument('--report-out', help='Файл для JSON отчета')
    _add_logging_arguments(audit_parser)

    # Команда oracle-pm
    oracle_parser = subparsers.add_parser('oracle-pm', help='Переборный оракул паросочетаний')
    oracle_parser.add_argument('--in', dest='input', required=True, help='Файл двудольного графа')
    _add_logging_arguments(oracle_parser)

    return parser


def main(argv: Optional[List[str]] = None) -> None:
    """Основная функция CLI"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return

    # Настраиваем логирование
    log_level = getattr(args, 'log_level', 'INFO')
    log_format = getattr(args, 'log_format', 'json')
    setup_logging(level=log_level, format_type=log_format)
    logger = get_logger()

    cli = HyperpackCLI()

    try:
        if args.command == 'gen':
            code = cli.generate(args.n, args.k, args.p, args.seed, args.out)
        elif args.command == 'pack':
            code = cli.pack(args)
        elif args.command == 'validate':
            code = cli.validate(args.input, args.cycles)
        elif args.command == 'audit':
            code = cli.audit(args.input, args.ell, args.eps, args.samples, args.report_out, args.seed)
        elif args.command == 'oracle-pm':
            code = cli.oracle_pm(args.input)
        else:
            parser.print_help()
            code = 0
    except KeyboardInterrupt:
        logger.info("Application interrupted by user")
        sys.exit(130)
    except PackingException as e:
        logger.error("Packing error", error=str(e), error_type=type(e).__name__)
        sys.exit(e.exit_code)
    except Exception as e:
        logger.error("Unexpected error", error=str(e))
        sys.exit(1)

    sys.exit(code)


if __name__ == '__main__':
    main()
