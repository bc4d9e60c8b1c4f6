"""
출력 포맷터 및 Rich 기반 출력 유틸리티

이 모듈은 결정 그래프와 표를 DOT, JSON, CSV, 텍스트 형식으로 변환하고
Rich 라이브러리로 검증 결과를 터미널에 출력합니다.
모든 출력은 같은 입력에 대해 바이트 단위로 같습니다.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..models.schemas import CheckStatus, VerifyReport

# 화살표 색 (색 번호 → graphviz 색 이름)
PALETTE: Dict[int, str] = {
    0: "black",
    1: "red",
    2: "orange",
    3: "gold3",
    4: "forestgreen",
    5: "deepskyblue",
    6: "blue",
    7: "purple",
    8: "magenta",
}

STATUS_STYLES = {
    CheckStatus.PASS: "green",
    CheckStatus.FAIL: "red",
    CheckStatus.SKIP: "yellow",
}


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def graphviz(
    name: str,
    labels: Sequence[str],
    arrows: Iterable[Tuple[int, int, int]],
    roots: Iterable[int] = (),
) -> Iterator[str]:
    """
    결정 그래프를 DOT 줄 단위로 생성

    Args:
        name: 그래프 이름
        labels: 원소별 표기
        arrows: (색, 출발, 도착) f 화살표
        roots: 이중 테두리로 표시할 원소

    Use like so::

        with open("b6.dot", "w") as f:
            f.writelines(graphviz(crystal.name, crystal.labels, crystal.arrows()))
    """
    highlighted = set(roots)
    yield "digraph {}{{\n".format(_gvquote(name) + " ")
    yield "  rankdir=TB;\n"
    yield "  node [shape=box fontsize=10];\n"
    for k, label in enumerate(labels):
        shape = ' peripheries=2' if k in highlighted else ""
        yield "  n{} [label={}{}];\n".format(k, _gvquote(label), shape)
    for i, x, y in sorted(arrows):
        yield "  n{} -> n{} [color={} label={}];\n".format(x, y, PALETTE.get(i, "grey"), _gvquote(str(i)))
    yield "}\n"


def to_dot(name: str, labels: Sequence[str], arrows: Iterable[Tuple[int, int, int]], roots: Iterable[int] = ()) -> str:
    return "".join(graphviz(name, labels, arrows, roots))


def to_json(data: Any) -> str:
    """정렬된 키와 고정 들여쓰기의 JSON"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def to_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """공백 정렬 텍스트 표"""
    materialized = [[str(cell) for cell in row] for row in rows]
    widths = [len(h) for h in header]
    for row in materialized:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in materialized:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_rows(fmt: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    표를 지정 형식으로 변환

    Args:
        fmt: "text", "csv", "json"

    Raises:
        ValueError: 지원하지 않는 형식
    """
    rows = list(rows)
    if fmt == "csv":
        return to_csv(header, rows)
    if fmt == "json":
        return to_json([dict(zip(header, row)) for row in rows])
    if fmt == "text":
        return to_text(header, rows)
    raise ValueError(f"표 출력에 사용할 수 없는 형식: {fmt}")


class RichCrystalDisplay:
    """
    Rich 라이브러리를 사용한 터미널 출력

    검증 보고서, 표, 기둥 그림을 색상과 테이블로 보여 줍니다.
    """

    def __init__(self, console: Optional[Console] = None):
        """
        Rich 디스플레이 초기화

        Args:
            console: Rich Console 인스턴스 (없으면 새로 생성)
        """
        self.console = console or Console()

    def show_startup_banner(self, title: str = "E 타입 결정 검증"):
        """시작 배너 출력"""
        panel = Panel(
            f"[bold blue]{title}[/bold blue]\n\n[dim]완전 결정 · 영 기둥 · 영 벽 · 경로 모델[/dim]",
            title="[bold green]Crystal Walls[/bold green]",
            border_style="blue",
            padding=(1, 2),
        )
        self.console.print(panel)
        self.console.print()

    def show_rows(self, title: str, header: Sequence[str], rows: Iterable[Sequence[Any]]):
        """임의 표 출력"""
        table = Table(title=title, box=box.ROUNDED, show_header=True, header_style="bold magenta")
        for name in header:
            table.add_column(name)
        for row in rows:
            table.add_row(*[str(cell) for cell in row])
        self.console.print(table)
        self.console.print()

    def show_report(self, report: VerifyReport):
        """
        검증 결과를 테이블로 출력

        Args:
            report: 검증 보고서
        """
        table = Table(
            title="검증 결과",
            box=box.ROUNDED,
            show_header=True,
            header_style="bold magenta",
        )
        table.add_column("검사", style="cyan", no_wrap=True)
        table.add_column("타입", justify="center")
        table.add_column("상태", justify="center")
        table.add_column("시간", justify="right", style="blue")
        table.add_column("반례")

        for check in report.checks:
            table.add_row(
                check.check_id,
                check.type_tag or "-",
                Text(check.status.value, style=STATUS_STYLES[check.status]),
                f"{check.duration:.2f}s",
                check.witness or "",
            )

        self.console.print(table)
        summary = (
            f"PASS [green]{report.count(CheckStatus.PASS)}[/green]  "
            f"FAIL [red]{report.count(CheckStatus.FAIL)}[/red]  "
            f"SKIP [yellow]{report.count(CheckStatus.SKIP)}[/yellow]"
        )
        self.console.print(summary)
        self.console.print()

    def show_errors(self, errors: List[str]):
        """
        에러 목록 출력

        Args:
            errors: 에러 메시지 목록
        """
        if not errors:
            return

        error_text = "\n".join(f"• {error}" for error in errors)
        panel = Panel(
            error_text,
            title="[bold red]발생한 문제[/bold red]",
            border_style="red",
            padding=(1, 2),
        )
        self.console.print(panel)
        self.console.print()

    def show_column(self, title: str, rows: List[str]):
        """기둥 그림 출력 (정육면체 한 줄씩)"""
        panel = Panel("\n".join(rows), title=f"[bold]{title}[/bold]", border_style="cyan", padding=(0, 1))
        self.console.print(panel)

    def show_completion_message(self, output_path: Optional[str] = None, passed: bool = True):
        """
        완료 메시지 출력

        Args:
            output_path: 저장된 파일 경로
            passed: 전체 통과 여부
        """
        if passed:
            message = "[bold green]모든 검사를 통과했습니다[/bold green]"
        else:
            message = "[bold red]실패한 검사가 있습니다[/bold red]"
        if output_path:
            message += f"\n\n저장 위치: [cyan]{output_path}[/cyan]"

        panel = Panel(
            message,
            title="[bold green]완료[/bold green]" if passed else "[bold red]완료[/bold red]",
            border_style="green" if passed else "red",
            padding=(1, 2),
        )
        self.console.print(panel)


class ReportSaver:
    """
    출력 파일 저장 관리자
    """

    def __init__(self, output_dir: str = "./output"):
        """
        저장 관리자 초기화

        Args:
            output_dir: 출력 디렉토리
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def save(self, content: str, filename: str) -> str:
        """
        내용 저장

        Returns:
            저장된 파일 경로

        Raises:
            OSError: 쓰기 실패 (경로 포함)
        """
        file_path = self.output_dir / filename
        try:
            with open(file_path, "w", encoding="utf-8") as f:
                f.write(content)
        except OSError as e:
            raise OSError(f"파일 저장 실패: {file_path} - {e}") from e
        return str(file_path)


# 편의 함수들
def report_to_json(report: VerifyReport) -> str:
    """검증 보고서 JSON (검사 순서는 검사 id 순)"""
    checks = sorted(report.checks, key=lambda c: (c.check_id, c.type_tag or ""))
    data = {
        "passed": report.passed,
        "types": report.types,
        "errors": report.errors,
        "checks": [
            {
                "check_id": c.check_id,
                "type": c.type_tag,
                "status": c.status.value,
                "witness": c.witness,
            }
            for c in checks
        ],
    }
    return to_json(data)
