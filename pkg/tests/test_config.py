"""
설정 관리 모듈 테스트
"""

import os
import shutil
import tempfile
from pathlib import Path
from unittest.mock import patch

import pytest

from src.utils.config import (
    ConfigManager,
    CrystalConfig,
    CrystalToolConfig,
    GraphConfig,
    OutputConfig,
    VerifyConfig,
    create_config_template,
    ensure_directory,
    get_config,
    get_config_manager,
    get_output_filename,
)


class TestConfigDataClasses:
    """설정 데이터클래스 테스트"""

    def test_crystal_config_defaults(self):
        config = CrystalConfig()

        assert config.depth_cap == 8
        assert config.default_depth == 4
        assert Path(config.pattern_dir).name == "patterns"

    def test_verify_config_defaults(self):
        """검증 설정 기본값 테스트"""
        config = VerifyConfig()

        assert config.types == ["E6", "E7", "E8"]
        assert config.master_depths == {"E6": 6, "E7": 6, "E8": 5}
        assert config.fock_types == ["E6", "E7", "E8"]

    def test_output_and_graph_defaults(self):
        assert OutputConfig().format == "text"
        assert GraphConfig().checkpointer == "memory"
        assert GraphConfig().thread_id_prefix == "verify_thread"

    def test_tool_config_creation(self):
        config = CrystalToolConfig()

        assert isinstance(config.crystal, CrystalConfig)
        assert isinstance(config.verify, VerifyConfig)
        assert config.version == "0.1.0"


class TestConfigManager:
    """ConfigManager 클래스 테스트"""

    def setup_method(self):
        """각 테스트 메서드 실행 전 설정"""
        self.temp_dir = tempfile.mkdtemp()
        self.config_file = os.path.join(self.temp_dir, "crystal.env")

        with open(self.config_file, "w") as f:
            f.write(
                "DEPTH_CAP=10\n"
                "VERIFY_TYPES=e6,e7\n"
                "MASTER_DEPTH_E7=7\n"
                "FOCK_TYPES=E6\n"
                "OUTPUT_FORMAT=JSON\n"
                "LOG_LEVEL=debug\n"
                "GRAPH_DEBUG=true\n"
            )

    def teardown_method(self):
        """각 테스트 메서드 실행 후 정리"""
        shutil.rmtree(self.temp_dir)

    def test_initialization_without_load(self):
        manager = ConfigManager(config_file=self.config_file, auto_load=False)

        assert manager.config_file == self.config_file
        assert manager._config is None
        assert manager._validated is False

    def test_load_from_file(self):
        """설정 파일에서 로드"""
        config = ConfigManager(config_file=self.config_file).config

        assert config.crystal.depth_cap == 10
        assert config.verify.types == ["E6", "E7"]
        assert config.verify.master_depths["E7"] == 7
        assert config.verify.master_depths["E6"] == 6
        assert config.verify.fock_types == ["E6"]
        assert config.output.format == "json"
        assert config.logging.level == "DEBUG"
        assert config.graph.debug is True

    def test_missing_file_uses_defaults(self):
        config = ConfigManager(config_file=os.path.join(self.temp_dir, "none.env")).config

        assert config.crystal.depth_cap == 8
        assert config.output.format == "text"

    @patch.dict(os.environ, {"DEPTH_CAP": "3", "OUTPUT_FORMAT": "csv"})
    def test_process_environment_ignored(self):
        """프로세스 환경변수는 설정에 영향을 주지 않는다"""
        config = ConfigManager(config_file=os.path.join(self.temp_dir, "none.env")).config

        assert config.crystal.depth_cap == 8
        assert config.output.format == "text"

    def test_validate_success(self):
        manager = ConfigManager(config_file=self.config_file)

        assert manager.validate_config() == []
        assert manager.is_valid()

    def test_validate_bad_format(self):
        manager = ConfigManager(config_file=self.config_file)
        manager.config.output.format = "xml"

        errors = manager.validate_config()
        assert any("출력 형식" in error for error in errors)

    def test_validate_depth_over_cap(self):
        manager = ConfigManager(config_file=self.config_file)
        manager.update_setting("crystal.depth_cap", 5)

        errors = manager.validate_config()
        assert any("E6 대조 검사 깊이" in error for error in errors)
        assert any("포크 검사 깊이" in error for error in errors)

    def test_validate_unknown_type(self):
        manager = ConfigManager(config_file=self.config_file)
        manager.config.verify.types = ["E9"]

        errors = manager.validate_config()
        assert any("E9" in error for error in errors)

    def test_get_summary(self):
        summary = ConfigManager(config_file=self.config_file).get_summary()

        assert summary["depth_cap"] == 10
        assert summary["types"] == ["E6", "E7"]
        assert summary["output_format"] == "json"

    def test_update_setting_resets_validation(self):
        manager = ConfigManager(config_file=self.config_file)
        manager.validate_config()

        manager.update_setting("verify.fock_depth", 4)
        assert manager.config.verify.fock_depth == 4
        assert manager._validated is False

    def test_update_setting_invalid_path(self):
        manager = ConfigManager(config_file=self.config_file)

        with pytest.raises(ValueError, match="section.key"):
            manager.update_setting("invalid", 1)

        with pytest.raises(ValueError, match="존재하지 않는 설정 섹션"):
            manager.update_setting("invalid.key", 1)

        with pytest.raises(ValueError, match="존재하지 않는 설정 키"):
            manager.update_setting("crystal.invalid", 1)

    def test_export_template(self):
        manager = ConfigManager(config_file=self.config_file)
        template_file = os.path.join(self.temp_dir, "crystal.env.template")

        manager.export_config_template(template_file)

        content = Path(template_file).read_text(encoding="utf-8")
        assert "DEPTH_CAP=" in content
        assert "MASTER_DEPTH_E8=" in content
        assert "GRAPH_CHECKPOINTER=" in content

    def test_template_loads_as_defaults(self):
        """생성한 템플릿을 그대로 읽으면 기본값과 같다"""
        template_file = os.path.join(self.temp_dir, "crystal.env.template")
        ConfigManager(config_file=self.config_file).export_config_template(template_file)

        config = ConfigManager(config_file=template_file).config
        assert config.crystal.depth_cap == CrystalConfig().depth_cap
        assert config.verify.types == VerifyConfig().types
        assert config.crystal.pattern_dir == CrystalConfig().pattern_dir


class TestGlobalConfigFunctions:
    """전역 설정 함수 테스트"""

    def test_get_config_manager_singleton(self):
        import src.utils.config
        src.utils.config._config_manager = None

        manager1 = get_config_manager()
        manager2 = get_config_manager()

        assert manager1 is manager2

    def test_get_config_function(self):
        assert isinstance(get_config(), CrystalToolConfig)

    def test_create_config_template_function(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            template_path = os.path.join(temp_dir, "crystal.env.template")

            create_config_template(template_path)

            assert "VERIFY_TYPES=" in Path(template_path).read_text(encoding="utf-8")


class TestUtilityFunctions:
    """유틸리티 함수 테스트"""

    def test_ensure_directory(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            new_dir = os.path.join(temp_dir, "tables", "e6")

            result = ensure_directory(new_dir)

            assert os.path.isdir(new_dir)
            assert result == Path(new_dir)

    def test_get_output_filename(self):
        """같은 입력이면 같은 파일명"""
        assert get_output_filename("crystal", "E6", "txt") == "crystal_e6.txt"
        assert get_output_filename("verify", extension="json") == "verify.json"
