"""
검증 파이프라인과 명령행 테스트
"""

import json
import shutil
import tempfile
from pathlib import Path
from unittest.mock import MagicMock

from src.agents.graph import VerificationAgent, blocked_node, create_verification_agent, should_build_walls
from src.core.columns import PATTERN_DIR
from src.main import main
from src.models.schemas import CheckResult, CheckStatus, create_initial_state, validate_group
from src.nodes.common import PassNote, SkipCheck, run_check, run_group


class TestRunCheck:
    """개별 검사 실행 테스트"""

    def test_pass(self):
        result = run_check("x.pass", "E6", lambda: None)

        assert result.status == CheckStatus.PASS
        assert result.witness is None
        assert result.duration >= 0

    def test_fail_keeps_witness(self):
        result = run_check("x.fail", "E6", lambda: "반례")

        assert result.status == CheckStatus.FAIL
        assert result.witness == "반례"

    def test_pass_with_note(self):
        result = run_check("x.note", "E7", lambda: PassNote("p 차이 +1"))

        assert result.status == CheckStatus.PASS
        assert result.witness == "p 차이 +1"
        assert type(result.witness) is str

    def test_skip(self):
        def skipped():
            raise SkipCheck("E8 전용 검사")

        result = run_check("x.skip", "E6", skipped)
        assert result.status == CheckStatus.SKIP
        assert result.passed

    def test_exception_becomes_failure(self):
        def broken():
            raise KeyError("b")

        result = run_check("x.error", "E7", broken)
        assert result.status == CheckStatus.FAIL
        assert result.witness.startswith("KeyError")


class TestRunGroup:
    """그룹 노드 테스트"""

    def test_group_not_selected(self):
        state = create_initial_state(["E6"], only=["energy"])
        checks = MagicMock()

        assert run_group(state, "perfect", checks) is state
        checks.assert_not_called()

    def test_results_appended_per_type(self):
        state = create_initial_state(["e6", "e7"])
        updated = run_group(
            state, "perfect", lambda s, t: [CheckResult(check_id="perfect.x", type_tag=t, status=CheckStatus.PASS)]
        )

        assert [check["type_tag"] for check in updated["checks"]] == ["E6", "E7"]
        assert updated["checks"][0]["status"] == "PASS"
        assert "perfect" in updated["durations"]
        assert state["checks"] == []

    def test_errors_collected(self):
        def boom(state, type_tag):
            raise RuntimeError("망가짐")

        updated = run_group(create_initial_state(["E6"]), "energy", boom)
        assert updated["errors"] == ["energy 노드 오류 (E6): 망가짐"]

    def test_validate_group(self):
        assert validate_group("walls")
        assert not validate_group("tables")


class TestRouting:
    """조건부 엣지 테스트"""

    def failed_psi(self, type_tag):
        return CheckResult(
            check_id="columns.psi_isomorphism", type_tag=type_tag, status=CheckStatus.FAIL, witness="충돌"
        ).model_dump(mode="json")

    def test_walls_when_psi_passes(self):
        assert should_build_walls(create_initial_state(["E6"])) == "walls"

    def test_blocked_when_all_fail(self):
        state = create_initial_state(["E6", "E7"])
        state["checks"] = [self.failed_psi("E6"), self.failed_psi("E7")]

        assert should_build_walls(state) == "blocked"

    def test_walls_when_one_type_survives(self):
        state = create_initial_state(["E6", "E7"])
        state["checks"] = [self.failed_psi("E6")]

        assert should_build_walls(state) == "walls"

    def test_blocked_node_records_skips(self):
        state = create_initial_state(["E6"], only=["columns", "walls"])
        updated = blocked_node(state)

        assert [(c["check_id"], c["status"]) for c in updated["checks"]] == [("walls.blocked", "SKIP")]


class TestVerificationAgent:
    """검증 에이전트 테스트"""

    def test_graph_visualization(self):
        text = create_verification_agent(checkpointer="none").get_graph_visualization()

        for node in ("perfect", "energy", "columns", "walls", "paths", "blocked"):
            assert node in text

    def test_energy_only(self):
        report = VerificationAgent(checkpointer="memory").run(types=["E6"], only=["energy"])

        assert report.passed
        assert {check.check_id for check in report.checks} == {
            "energy.ground_state_tables",
            "energy.distance_oracle",
            "energy.maximal_vectors",
            "energy.classical_components",
        }
        assert report.count(CheckStatus.SKIP) == 2


class TestBlockedPipeline:
    """ψ 가 없을 때 영 벽 검사를 건너뛰는 흐름"""

    def setup_method(self):
        """테스트 설정"""
        self.temp_dir = tempfile.mkdtemp()
        text = (PATTERN_DIR / "e6.txt").read_text(encoding="utf-8")
        broken = text.replace("cells 0,0;0,1 supports 0,1 ", "cells 0,0;0,1 supports 1 ")
        Path(self.temp_dir, "e6.txt").write_text(broken, encoding="utf-8")

    def teardown_method(self):
        """테스트 정리"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_walls_blocked(self):
        report = VerificationAgent(checkpointer="none").run(
            types=["E6"], only=["columns", "walls"], depth=1, pattern_dir=self.temp_dir
        )
        by_id = {check.check_id: check for check in report.checks}

        assert not report.passed
        assert by_id["columns.psi_isomorphism"].status == CheckStatus.FAIL
        assert by_id["walls.blocked"].status == CheckStatus.SKIP
        assert not any(check_id.startswith("walls.") and check_id != "walls.blocked" for check_id in by_id)


class TestCommandLine:
    """명령행 종료 코드와 출력 테스트"""

    def test_verify_json(self, capsys):
        code = main(["verify", "--only", "energy", "--types", "e6", "--json", "--checkpointer", "none"])
        data = json.loads(capsys.readouterr().out)

        assert code == 0
        assert data["passed"] is True
        assert data["types"] == ["E6"]

    def test_invalid_type(self):
        assert main(["verify", "--types", "E9"]) == 2

    def test_depth_over_cap(self):
        assert main(["verify", "--only", "walls", "--types", "E6", "--depth", "99"]) == 2

    def test_unknown_weight(self):
        assert main(["enumerate", "--type", "E6", "--lambda", "Λ2", "--depth", "1"]) == 2

    def test_build_dot(self, capsys):
        code = main(["build", "--type", "E6", "--what", "B", "--format", "dot"])
        out = capsys.readouterr().out

        assert code == 0
        assert out.startswith('digraph "B_6" {')
        assert out.count("[label=") == 27
        assert out.count("->") == sum(1 for line in out.splitlines() if "[color=" in line)

    def test_build_is_deterministic(self, capsys):
        main(["build", "--type", "E7", "--format", "json"])
        first = capsys.readouterr().out
        main(["build", "--type", "E7", "--format", "json"])

        assert capsys.readouterr().out == first

    def test_tables_pass(self, capsys):
        code = main(["tables", "--type", "E6", "--sigma", "--ground", "--format", "csv"])
        out = capsys.readouterr().out

        assert code == 0
        assert "FAIL" not in out
        assert "6|0" in out

    def test_tables_e7_sigma_offset(self, capsys):
        """E7 σ 는 계산한 p 를 균일한 차이만큼 옮겨 내장 표와 대조한다"""
        code = main(["tables", "--type", "E7", "--sigma", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()

        assert code == 0
        assert len(lines) == 1 + 56
        assert "0|7,7|0,1,PASS" in lines
        assert not any(line.endswith(",FAIL") for line in lines)

    def test_enumerate_hw_only(self, capsys):
        code = main(["enumerate", "--model", "fock", "--type", "E6", "--hw-only", "--depth", "2", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()

        assert code == 0
        assert lines[0] == "weight,count"
        assert sum(int(line.rsplit(",", 1)[1]) for line in lines[1:]) == 1 + 1 + 2

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            target = Path(temp_dir) / "h_e6.csv"
            code = main(["energy", "dump", "--type", "E6", "--format", "csv", "--output", str(target)])

            assert code == 0
            assert len(target.read_text(encoding="utf-8").splitlines()) == 1 + 27 * 27

    def test_tables_rejects_dot(self):
        assert main(["tables", "--type", "E6", "--format", "dot"]) == 2
