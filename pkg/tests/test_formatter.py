"""
출력 포맷터 테스트
"""

import json
import tempfile
from datetime import datetime
from pathlib import Path

import pytest

from src.models.schemas import CheckResult, CheckStatus, VerifyReport
from src.utils.formatter import (
    ReportSaver,
    graphviz,
    render_rows,
    report_to_json,
    to_csv,
    to_dot,
    to_json,
    to_text,
)


class TestDot:
    """DOT 출력 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.labels = ["6|0", "0|1", "1|6"]
        self.arrows = [(1, 1, 2), (0, 0, 1)]

    def test_header(self):
        lines = list(graphviz("B6", self.labels, self.arrows))

        assert lines[0] == 'digraph "B6" {\n'
        assert lines[1] == "  rankdir=TB;\n"
        assert lines[-1] == "}\n"

    def test_nodes_and_roots(self):
        text = to_dot("B6", self.labels, self.arrows, roots=[0])

        assert '  n0 [label="6|0" peripheries=2];\n' in text
        assert '  n1 [label="0|1"];\n' in text

    def test_arrows_sorted(self):
        text = to_dot("B6", self.labels, self.arrows)
        arrow_lines = [line for line in text.splitlines() if "->" in line]

        assert arrow_lines[0].startswith("  n0 -> n1 [color=black")
        assert arrow_lines[1].startswith("  n1 -> n2 [color=red")

    def test_deterministic(self):
        """같은 입력이면 같은 바이트"""
        assert to_dot("B6", self.labels, self.arrows) == to_dot("B6", self.labels, list(reversed(self.arrows)))

    def test_quotes_escaped(self):
        text = to_dot('a"b', ["x"], [])
        assert text.startswith('digraph "a\\"b" {')


class TestTables:
    """표 출력 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.header = ["r", "label", "H"]
        self.rows = [(0, "6|0", 2), (1, "1|6", 0)]

    def test_json_sorted_with_newline(self):
        text = to_json({"b": 1, "a": [1, 2]})

        assert text.endswith("}\n")
        assert text.index('"a"') < text.index('"b"')

    def test_json_keeps_unicode(self):
        assert "Λ0" in to_json({"lambda": "Λ0"})

    def test_csv(self):
        assert to_csv(self.header, self.rows) == "r,label,H\n0,6|0,2\n1,1|6,0\n"

    def test_text_alignment(self):
        text = to_text(self.header, self.rows)
        lines = text.splitlines()

        assert lines[0] == "r  label  H"
        assert lines[1] == "0  6|0    2"

    def test_render_rows_json(self):
        data = json.loads(render_rows("json", self.header, self.rows))
        assert data[0] == {"r": 0, "label": "6|0", "H": 2}

    def test_render_rows_rejects_dot(self):
        with pytest.raises(ValueError):
            render_rows("dot", self.header, self.rows)


class TestReportSaver:
    """파일 저장 테스트"""

    def test_save(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            saver = ReportSaver(str(Path(temp_dir) / "out"))
            path = saver.save("내용\n", "crystal_e6.txt")

            assert Path(path).read_text(encoding="utf-8") == "내용\n"


class TestReportJson:
    """검증 보고서 JSON 테스트"""

    def test_sorted_by_check_id(self):
        report = VerifyReport(
            types=["E6"],
            checks=[
                CheckResult(check_id="walls.closure", type_tag="E6", status=CheckStatus.PASS, duration=1.5),
                CheckResult(check_id="energy.table", type_tag="E6", status=CheckStatus.FAIL, witness="(0, 1)"),
            ],
        )
        data = json.loads(report_to_json(report))

        assert data["passed"] is False
        assert [c["check_id"] for c in data["checks"]] == ["energy.table", "walls.closure"]
        assert data["checks"][0] == {"check_id": "energy.table", "type": "E6", "status": "FAIL", "witness": "(0, 1)"}

    def test_no_timing_fields(self):
        """소요 시간과 생성 시각은 JSON 에 들어가지 않는다"""
        report = VerifyReport(types=["E6"], checks=[CheckResult(check_id="x", status=CheckStatus.PASS, duration=3.0)])
        first = report_to_json(report)
        report.checks[0].duration = 9.0

        assert report_to_json(report) == first
        assert "generated_at" not in first

    def test_model_dump_keeps_iso_timestamp(self):
        """모델 직렬화는 생성 시각을 ISO 문자열로 남긴다"""
        report = VerifyReport(generated_at=datetime(2024, 1, 2, 3, 4, 5), types=["E7"])

        assert report.model_dump(mode="json")["generated_at"] == "2024-01-02T03:04:05"
        assert json.loads(report.model_dump_json())["generated_at"] == "2024-01-02T03:04:05"
        assert "generated_at" not in report_to_json(report)
