"""
E 타입 결정 · 영 벽 검증 도구 메인 실행 스크립트

이 스크립트는 결정 그래프 내보내기, 표 출력, 벽 열거, 전체 검증을
명령행 하위 명령으로 제공합니다.

종료 코드: 0 성공, 1 검사 실패 또는 실행 오류, 2 잘못된 사용
"""

import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.logging import RichHandler

from .agents.graph import GraphError, VerificationAgent
from .core.columns import ColumnClass, ColumnError, column_rows, compare_sigma, load_sigma_rows, sigma_table
from .core.context import TypeContext, load_type_context
from .core.crystal import CrystalFragment, DepthOverflowError, partitions, tensor
from .core.energy import zero_arrow_distance
from .core.paths import load_ground_table
from .core.root_data import RootDataError, TypeTag
from .core.walls import UnknownWeightError, WallError
from .models.schemas import CHECK_GROUPS, ColumnRecord, WallRecord
from .utils.config import VALID_FORMATS, VALID_TYPES, get_config, get_config_manager
from .utils.formatter import (
    ReportSaver,
    RichCrystalDisplay,
    render_rows,
    report_to_json,
    to_dot,
    to_json,
)

BUILD_TARGETS = ["B", "C", "BxB", "walls", "paths"]
ENUMERATE_MODELS = ["reduced", "fock", "path", "fock-path"]


class CrystalToolError(Exception):
    """결정 검증 도구 관련 예외"""
    pass


class UsageError(CrystalToolError):
    """입력 검증 예외 (종료 코드 2)"""
    pass


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None) -> None:
    """
    로깅 시스템 설정

    Args:
        log_level: 로그 레벨 (DEBUG, INFO, WARNING, ERROR)
        log_file: 로그 파일 경로 (없으면 콘솔만 출력)
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)
    log_format = get_config().logging.format

    # 표준 출력은 결과 전용
    handlers: List[logging.Handler] = [RichHandler(console=Console(stderr=True), show_time=False)]

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(log_format))
        handlers.append(file_handler)

    logging.basicConfig(level=numeric_level, format=log_format, handlers=handlers, force=True)


def build_parser() -> argparse.ArgumentParser:
    """
    명령행 인수 파서 구성

    Returns:
        argparse 파서
    """
    parser = argparse.ArgumentParser(
        prog="crystal",
        description="E₆⁽¹⁾, E₇⁽¹⁾, E₈⁽¹⁾ 레벨 1 완전 결정과 영 벽 모델 검증 도구",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
사용 예시:
  %(prog)s build --type E6 --what B --format dot
  %(prog)s tables --type E7 --sigma
  %(prog)s enumerate --model fock --type E8 --hw-only --depth 3
  %(prog)s verify --only energy --json
  %(prog)s column show --type E6 --element "6|0"
        """,
    )

    # 공통 옵션
    parser.add_argument("--config", help="설정 파일 경로 (기본값: crystal.env, 없으면 기본 설정)")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="로그 레벨 (기본값: 설정값)",
    )
    parser.add_argument("--log-file", help="로그 파일 경로")
    parser.add_argument("--debug", action="store_true", help="디버그 모드 활성화 (--log-level DEBUG와 동일)")
    parser.add_argument("--version", "-v", action="version", version="%(prog)s 0.1.0")

    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_output(sub: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        sub.add_argument("--format", "-f", choices=list(formats), help="출력 형식 (기본값: 설정값)")
        sub.add_argument("--output", "-o", help="출력 파일 경로 (없으면 표준 출력)")

    build = subparsers.add_parser("build", help="결정 그래프 내보내기")
    build.add_argument("--type", "-t", required=True, choices=VALID_TYPES, type=str.upper, help="타입")
    build.add_argument("--what", "-w", default="B", choices=BUILD_TARGETS, help="내보낼 대상 (기본값: B)")
    build.add_argument("--lambda", dest="lam", help="레벨 1 가중치 (walls/paths, 기본값: Λ0)")
    build.add_argument("--depth", "-d", type=int, help="열거 깊이 (walls/paths)")
    build.add_argument("--model", choices=ENUMERATE_MODELS, help="walls/paths 의 모델")
    add_output(build, VALID_FORMATS)

    tables = subparsers.add_parser("tables", help="σ 표, 바닥 상태 표, 에너지 표 출력 (PASS/FAIL 표시)")
    tables.add_argument("--type", "-t", required=True, choices=VALID_TYPES, type=str.upper, help="타입")
    tables.add_argument("--sigma", action="store_true", help="σ 표")
    tables.add_argument("--ground", action="store_true", help="바닥 상태 표")
    tables.add_argument("--energy", action="store_true", help="에너지 표")
    add_output(tables, ["text", "csv", "json"])

    enumerate_cmd = subparsers.add_parser("enumerate", help="벽 / 경로 열거와 가중치별 개수")
    enumerate_cmd.add_argument("--model", "-m", default="reduced", choices=ENUMERATE_MODELS, help="모델")
    enumerate_cmd.add_argument("--type", "-t", required=True, choices=VALID_TYPES, type=str.upper, help="타입")
    enumerate_cmd.add_argument("--lambda", dest="lam", help="레벨 1 가중치 (기본값: Λ0)")
    enumerate_cmd.add_argument("--depth", "-d", type=int, help="열거 깊이 (기본값: 설정값)")
    enumerate_cmd.add_argument("--hw-only", action="store_true", help="최고 가중치 원소만")
    add_output(enumerate_cmd, VALID_FORMATS)

    verify = subparsers.add_parser("verify", help="전체 검증 실행")
    verify.add_argument("--only", nargs="+", choices=CHECK_GROUPS, help="실행할 검사 그룹")
    verify.add_argument("--types", nargs="+", choices=VALID_TYPES, type=str.upper, help="검사할 타입")
    verify.add_argument("--depth", "-d", type=int, help="열거 검사 깊이 (기본값: 타입별 설정값)")
    verify.add_argument("--pattern-dir", help="기둥 패턴 디렉토리 (기본값: 내장 데이터)")
    verify.add_argument("--json", action="store_true", help="JSON 보고서를 표준 출력으로")
    verify.add_argument("--output", "-o", help="JSON 보고서 저장 경로")
    verify.add_argument("--checkpointer", choices=["memory", "none"], help="체크포인터 유형 (기본값: 설정값)")

    column = subparsers.add_parser("column", help="영 기둥 도구")
    column_sub = column.add_subparsers(dest="action", required=True)
    show = column_sub.add_parser("show", help="원소에 대응하는 영 기둥 그림")
    show.add_argument("--type", "-t", required=True, choices=VALID_TYPES, type=str.upper, help="타입")
    show.add_argument("--element", "-e", help="B 원소 라벨 (없으면 전체 목록)")
    show.add_argument("--shift", type=int, default=0, help="z 지수")

    energy = subparsers.add_parser("energy", help="에너지 함수 도구")
    energy_sub = energy.add_subparsers(dest="action", required=True)
    dump = energy_sub.add_parser("dump", help="H 표 전체 출력")
    dump.add_argument("--type", "-t", required=True, choices=VALID_TYPES, type=str.upper, help="타입")
    add_output(dump, ["text", "csv", "json"])

    return parser


def resolve_depth(depth: Optional[int]) -> int:
    """
    Raises:
        DepthOverflowError: 설정 상한을 넘는 경우
    """
    config = get_config().crystal
    value = config.default_depth if depth is None else depth
    if value < 0:
        raise UsageError(f"깊이는 0 이상이어야 합니다: {value}")
    if value > config.depth_cap:
        raise DepthOverflowError(f"깊이 {value} 이(가) 상한 {config.depth_cap} 을(를) 넘습니다")
    return value


def emit(content: str, output: Optional[str]) -> Optional[str]:
    """
    결과를 파일 또는 표준 출력으로 내보냄

    Returns:
        저장된 파일 경로 (표준 출력이면 None)
    """
    if output:
        path = Path(output)
        return ReportSaver(str(path.parent)).save(content, path.name)
    sys.stdout.write(content)
    return None


def output_format(args: argparse.Namespace, allowed: Sequence[str]) -> str:
    fmt = args.format or get_config().output.format
    if fmt not in allowed:
        raise UsageError(f"이 명령에서 사용할 수 없는 형식: {fmt} (가능: {', '.join(allowed)})")
    return fmt


# 열거

def enumerate_fragment(ctx: TypeContext, model: str, lam_text: Optional[str], depth: int) -> Tuple[Any, CrystalFragment]:
    """
    (모델 객체, 조각)

    Raises:
        UnknownWeightError: 가중치 표기 오류
        DepthOverflowError: 깊이 상한 초과
    """
    lam = ctx.weight(lam_text)
    cap = get_config().crystal.depth_cap
    if model in ("reduced", "fock"):
        walls = ctx.wall_model(lam, model)
        return walls, walls.enumerate(depth, cap)
    paths = ctx.path_model(lam, fock=model == "fock-path")
    return paths, paths.enumerate(depth, cap)


def highest_weight_indices(model: Any, fragment: CrystalFragment) -> List[int]:
    return [k for k, node in enumerate(fragment.nodes) if model.is_highest_weight(node)]


def weight_count_rows(fragment: CrystalFragment, keep: Optional[List[int]] = None) -> List[Tuple[str, int]]:
    """(가중치 표기, 개수) 행 (가중치 표기 순)"""
    counts: Dict[str, int] = {}
    indices = range(len(fragment.nodes)) if keep is None else keep
    for k in indices:
        label = fragment.weights[k].label()
        counts[label] = counts.get(label, 0) + 1
    return sorted(counts.items())


def fragment_output(model: Any, fragment: CrystalFragment, fmt: str, hw_only: bool = False) -> str:
    roots = highest_weight_indices(model, fragment)
    keep = set(roots)
    if fmt == "dot":
        return to_dot(fragment.name, fragment.labels, fragment.arrows, roots)
    if fmt == "json":
        data = fragment.to_json_dict()
        if hw_only:
            data["elements"] = [element for element in data["elements"] if element["id"] in keep]
            data["arrows"] = []
        data["weight_counts"] = [
            {"weight": weight, "count": count} for weight, count in weight_count_rows(fragment, roots if hw_only else None)
        ]
        if hasattr(model, "to_json_dict"):
            data["walls"] = [
                WallRecord(
                    head=[f"{column['class_label']}@{column['shift']}" for column in model.to_json_dict(node)["columns"]],
                    weight=fragment.weights[k].label(),
                    depth=fragment.depths[k],
                ).model_dump()
                for k, node in enumerate(fragment.nodes)
                if not hw_only or k in keep
            ]
        return to_json(data)
    return render_rows(fmt, ["weight", "count"], weight_count_rows(fragment, roots if hw_only else None))


# 하위 명령

def cmd_build(args: argparse.Namespace) -> int:
    """결정 그래프 내보내기"""
    fmt = output_format(args, VALID_FORMATS)
    ctx = load_type_context(args.type)

    if args.what in ("walls", "paths"):
        model_name = args.model or ("reduced" if args.what == "walls" else "path")
        model, fragment = enumerate_fragment(ctx, model_name, args.lam, resolve_depth(args.depth))
        emit(fragment_output(model, fragment, fmt), args.output)
        return 0

    if args.what == "B":
        crystal = ctx.perfect
    elif args.what == "C":
        crystal = ctx.columns.crystal
    else:
        crystal = tensor(ctx.perfect, ctx.perfect)

    if fmt == "dot":
        content = to_dot(crystal.name, crystal.labels, crystal.arrows())
    elif fmt == "json":
        data = crystal.to_json_dict()
        if args.what == "C":
            data["columns"] = [
                ColumnRecord(
                    class_id=k,
                    label=crystal.labels[k],
                    base=rep.base,
                    extras=sorted(rep.extras),
                    weight=crystal.weights[k].label(),
                ).model_dump()
                for k, rep in enumerate(ctx.columns.reps)
            ]
        content = to_json(data)
    else:
        rows = [(x, crystal.labels[x], crystal.weights[x].label()) for x in range(crystal.size)]
        content = render_rows(fmt, ["id", "label", "weight"], rows)
    emit(content, args.output)
    return 0


def sigma_rows(ctx: TypeContext) -> List[Tuple[str, str, int, str]]:
    """(b, c, 내장 표 기준 p, 대조 결과); 계산한 p 는 균일한 차이만큼 옮겨서 비교"""
    labels = ctx.columns.crystal.labels
    computed = sorted((labels[b], labels[c], p) for b, c, p in sigma_table(ctx.columns, ctx.wall_model().translation))
    if ctx.spec.type_tag == TypeTag.E8:
        stored = [(label, label, 1) for label in labels]
    else:
        stored = load_sigma_rows(ctx.spec.type_tag)
    offset = compare_sigma(computed, stored).row_offset()
    expected = set(stored)
    return [
        (b, c, p - offset, "PASS" if (b, c, p - offset) in expected else "FAIL") for b, c, p in computed
    ]


def ground_rows(ctx: TypeContext) -> List[Tuple[str, int, str, int, int, str]]:
    embedded = load_ground_table()
    rows = []
    for lam in ctx.spec.level_one_weights():
        path_model = ctx.path_model(lam)
        expected = {row[0]: row for row in embedded.get((ctx.type_tag, lam.label()), [])}
        for r, label, energy, shift in path_model.ground.rows(6):
            status = "PASS" if expected.get(r) == (r, label, energy, shift) else "FAIL"
            rows.append((lam.label(), r, label, energy, shift, status))
    return rows


def energy_rows(ctx: TypeContext) -> List[Tuple[str, str, int, str]]:
    """(b, a, H(b⊗a), 0-화살표 거리 대조 결과); E8 은 대조 없이 '-'"""
    labels = ctx.perfect.labels
    size = ctx.perfect.size
    if ctx.spec.type_tag == TypeTag.E8:
        return [(labels[a], labels[b], ctx.table(a, b), "-") for a in range(size) for b in range(size)]
    dist = zero_arrow_distance(ctx.perfect)
    return [
        (labels[a], labels[b], ctx.table(a, b), "PASS" if ctx.table(a, b) == dist(b, a) else "FAIL")
        for a in range(size)
        for b in range(size)
    ]


def cmd_tables(args: argparse.Namespace) -> int:
    """표 출력 (실패 행이 있으면 종료 코드 1)"""
    fmt = output_format(args, ["text", "csv", "json"])
    ctx = load_type_context(args.type)
    if not (args.sigma or args.ground or args.energy):
        args.sigma = args.ground = True

    parts: List[str] = []
    failed = False
    sections = [
        (args.sigma, ["b", "c", "p", "status"], sigma_rows),
        (args.ground, ["lambda", "r", "element", "H", "m", "status"], ground_rows),
        (args.energy, ["left", "right", "H", "status"], energy_rows),
    ]
    for wanted, header, make_rows in sections:
        if not wanted:
            continue
        rows = make_rows(ctx)
        failed = failed or any(row[-1] == "FAIL" for row in rows)
        parts.append(render_rows(fmt, header, rows))
    emit("\n".join(parts) if fmt != "csv" else "".join(parts), args.output)
    return 1 if failed else 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    """벽 / 경로 열거"""
    fmt = output_format(args, VALID_FORMATS)
    ctx = load_type_context(args.type)
    model, fragment = enumerate_fragment(ctx, args.model, args.lam, resolve_depth(args.depth))
    emit(fragment_output(model, fragment, fmt, args.hw_only), args.output)
    if args.hw_only and args.model in ("fock", "fock-path"):
        expected = sum(len(partitions(k)) for k in range(resolve_depth(args.depth) + 1))
        found = len(highest_weight_indices(model, fragment))
        logging.getLogger(__name__).info(f"최고 가중치 원소 {found}개 (Σ p(k) = {expected})")
    return 0


def cmd_verify(args: argparse.Namespace, console: Console) -> int:
    """전체 검증 (FAIL 이 있으면 종료 코드 1)"""
    if args.depth is not None:
        resolve_depth(args.depth)
    agent = VerificationAgent(checkpointer=args.checkpointer, debug=args.debug or None)
    report = agent.run(types=args.types, only=args.only, depth=args.depth, pattern_dir=args.pattern_dir)

    content = report_to_json(report)
    saved_path = emit(content, args.output) if args.output else None
    if args.json:
        sys.stdout.write(content)
    else:
        display = RichCrystalDisplay(console)
        display.show_report(report)
        display.show_errors(report.errors)
        display.show_completion_message(saved_path, report.passed)
    return 0 if report.passed else 1


def cmd_column_show(args: argparse.Namespace, console: Console) -> int:
    """B 원소의 영 기둥 그림"""
    ctx = load_type_context(args.type)
    display = RichCrystalDisplay(console)
    if not args.element:
        rows = [
            (b, ctx.perfect.labels[b], ctx.columns.reps[ctx.psi[b]].label(), ctx.perfect.weights[b].label())
            for b in range(ctx.perfect.size)
        ]
        display.show_rows(f"{ctx.type_tag} 영 기둥", ["id", "element", "column", "weight"], rows)
        return 0
    try:
        b = ctx.perfect.find_label(args.element)
    except KeyError as e:
        raise UsageError(f"{ctx.type_tag} 에 없는 원소: {args.element}") from e
    column = ctx.columns.realize(ColumnClass(ctx.psi[b], args.shift))
    title = f"ψ(z^{args.shift}·{args.element}) = {column.label()}"
    display.show_column(title, column_rows(ctx.pattern, column))
    return 0


def cmd_energy_dump(args: argparse.Namespace) -> int:
    fmt = output_format(args, ["text", "csv", "json"])
    ctx = load_type_context(args.type)
    emit(render_rows(fmt, ["left", "right", "H"], ctx.table.rows()), args.output)
    return 0


def run_command(args: argparse.Namespace, console: Console) -> int:
    if args.command == "build":
        return cmd_build(args)
    if args.command == "tables":
        return cmd_tables(args)
    if args.command == "enumerate":
        return cmd_enumerate(args)
    if args.command == "verify":
        return cmd_verify(args, console)
    if args.command == "column":
        return cmd_column_show(args, console)
    return cmd_energy_dump(args)


def main(argv: Optional[List[str]] = None) -> int:
    """
    메인 진입점

    Returns:
        종료 코드 (0: 성공, 1: 실패, 2: 잘못된 사용)
    """
    console = Console()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        get_config_manager(args.config)
        log_level = "DEBUG" if args.debug else (args.log_level or get_config().logging.level)
        setup_logging(log_level, args.log_file or get_config().logging.file_path)
        return run_command(args, console)

    except KeyboardInterrupt:
        console.print("\n[yellow]사용자에 의해 중단되었습니다.[/yellow]")
        return 1

    except (UsageError, UnknownWeightError, DepthOverflowError, RootDataError) as e:
        Console(stderr=True).print(f"[red]사용 오류: {str(e)}[/red]")
        return 2

    except (ColumnError, WallError, GraphError, OSError, CrystalToolError) as e:
        Console(stderr=True).print(f"[red]실행 오류: {str(e)}[/red]")
        return 1

    except Exception as e:
        Console(stderr=True).print(f"[red]예상하지 못한 오류: {str(e)}[/red]")
        if args.debug:
            Console(stderr=True).print(f"[dim]상세 정보:\n{traceback.format_exc()}[/dim]")
        return 1


if __name__ == "__main__":
    sys.exit(main())
