"""
설정 관리 및 유틸리티 모듈

이 모듈은 결정 검증 도구의 설정을 중앙에서 관리합니다.
설정은 기본값과 선택적 설정 파일(.env 형식)에서만 오며,
프로세스 환경변수는 읽지 않습니다.
"""

from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import dotenv_values

DATA_ROOT = Path(__file__).resolve().parent.parent / "data"


@dataclass
class CrystalConfig:
    """결정 계산 관련 설정"""
    depth_cap: int = 8
    default_depth: int = 4
    pattern_dir: str = str(DATA_ROOT / "patterns")
    table_dir: str = str(DATA_ROOT / "tables")
    max_column_classes: int = 2000


@dataclass
class VerifyConfig:
    """검증 파이프라인 관련 설정"""
    types: List[str] = field(default_factory=lambda: ["E6", "E7", "E8"])
    master_depths: Dict[str, int] = field(default_factory=lambda: {"E6": 6, "E7": 6, "E8": 5})
    fock_depth: int = 6
    fock_types: List[str] = field(default_factory=lambda: ["E6", "E7", "E8"])


@dataclass
class OutputConfig:
    """출력 관련 설정"""
    output_dir: str = "./output"
    format: str = "text"  # "text", "json", "csv", "dot"
    save_file: bool = False


@dataclass
class LoggingConfig:
    """로깅 관련 설정"""
    level: str = "INFO"
    file_path: Optional[str] = None
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass
class GraphConfig:
    """LangGraph 관련 설정"""
    checkpointer: str = "memory"  # "memory", "none"
    debug: bool = False
    thread_id_prefix: str = "verify_thread"


@dataclass
class CrystalToolConfig:
    """결정 검증 도구 전체 설정"""
    crystal: CrystalConfig = field(default_factory=CrystalConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)

    # 메타 정보
    version: str = "0.1.0"
    created_at: datetime = field(default_factory=datetime.now)


VALID_FORMATS = ["text", "json", "csv", "dot"]
VALID_TYPES = ["E6", "E7", "E8"]


def _flag(value: Optional[str], default: bool) -> bool:
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def _type_list(value: Optional[str], default: List[str]) -> List[str]:
    if not value:
        return default
    return [item.strip().upper() for item in value.split(",") if item.strip()]


class ConfigManager:
    """
    설정 관리자

    기본값과 설정 파일을 조합하여 설정을 관리하고
    런타임에 설정 변경을 지원합니다.
    """

    def __init__(self, config_file: Optional[str] = None, auto_load: bool = True):
        """
        설정 관리자 초기화

        Args:
            config_file: 설정 파일 경로 (.env 형식)
            auto_load: 자동으로 설정 로드 여부
        """
        self.config_file = config_file or "crystal.env"
        self._config: Optional[CrystalToolConfig] = None
        self._validated: bool = False

        if auto_load:
            self.load_config()

    def load_config(self) -> CrystalToolConfig:
        """
        설정 로드 및 생성

        Returns:
            로드된 설정 객체
        """
        values: Dict[str, Optional[str]] = {}
        if Path(self.config_file).exists():
            values = dict(dotenv_values(self.config_file))

        config = CrystalToolConfig()

        # 설정 파일 값으로 오버라이드
        self._load_crystal_config(config.crystal, values)
        self._load_verify_config(config.verify, values)
        self._load_output_config(config.output, values)
        self._load_logging_config(config.logging, values)
        self._load_graph_config(config.graph, values)

        self._config = config
        self._validated = False
        return config

    def _load_crystal_config(self, config: CrystalConfig, values: Dict[str, Optional[str]]) -> None:
        """결정 계산 설정 로드"""
        config.depth_cap = int(values.get("DEPTH_CAP") or config.depth_cap)
        config.default_depth = int(values.get("DEFAULT_DEPTH") or config.default_depth)
        config.pattern_dir = values.get("PATTERN_DIR") or config.pattern_dir
        config.table_dir = values.get("TABLE_DIR") or config.table_dir
        config.max_column_classes = int(values.get("MAX_COLUMN_CLASSES") or config.max_column_classes)

    def _load_verify_config(self, config: VerifyConfig, values: Dict[str, Optional[str]]) -> None:
        """검증 설정 로드"""
        config.types = _type_list(values.get("VERIFY_TYPES"), config.types)
        for type_tag in VALID_TYPES:
            raw = values.get(f"MASTER_DEPTH_{type_tag}")
            if raw:
                config.master_depths[type_tag] = int(raw)
        config.fock_depth = int(values.get("FOCK_DEPTH") or config.fock_depth)
        config.fock_types = _type_list(values.get("FOCK_TYPES"), config.fock_types)

    def _load_output_config(self, config: OutputConfig, values: Dict[str, Optional[str]]) -> None:
        """출력 설정 로드"""
        config.output_dir = values.get("OUTPUT_DIR") or config.output_dir
        config.format = (values.get("OUTPUT_FORMAT") or config.format).lower()
        config.save_file = _flag(values.get("SAVE_FILE"), config.save_file)

    def _load_logging_config(self, config: LoggingConfig, values: Dict[str, Optional[str]]) -> None:
        """로깅 설정 로드"""
        config.level = (values.get("LOG_LEVEL") or config.level).upper()
        config.file_path = values.get("LOG_FILE") or None

    def _load_graph_config(self, config: GraphConfig, values: Dict[str, Optional[str]]) -> None:
        """그래프 설정 로드"""
        config.checkpointer = values.get("GRAPH_CHECKPOINTER") or config.checkpointer
        config.debug = _flag(values.get("GRAPH_DEBUG"), config.debug)
        config.thread_id_prefix = values.get("GRAPH_THREAD_PREFIX") or config.thread_id_prefix

    @property
    def config(self) -> CrystalToolConfig:
        """현재 설정 반환"""
        if self._config is None:
            self.load_config()
        assert self._config is not None
        return self._config

    def validate_config(self) -> List[str]:
        """
        설정 유효성 검사

        Returns:
            검증 오류 메시지 목록 (빈 리스트면 성공)
        """
        errors = []
        config = self.config

        # 결정 계산 설정 검증
        if config.crystal.depth_cap < 0:
            errors.append("깊이 상한은 0 이상이어야 합니다")

        if not 0 <= config.crystal.default_depth <= config.crystal.depth_cap:
            errors.append(f"기본 깊이는 0-{config.crystal.depth_cap} 범위여야 합니다")

        for name in ("pattern_dir", "table_dir"):
            if not Path(getattr(config.crystal, name)).is_dir():
                errors.append(f"데이터 디렉토리가 없습니다: {getattr(config.crystal, name)}")

        # 검증 설정 검증
        for type_tag in config.verify.types + config.verify.fock_types:
            if type_tag not in VALID_TYPES:
                errors.append(f"지원되지 않는 타입: {type_tag}")

        for type_tag, depth in config.verify.master_depths.items():
            if depth > config.crystal.depth_cap:
                errors.append(f"{type_tag} 대조 검사 깊이 {depth} 이(가) 상한을 넘습니다")

        if config.verify.fock_depth > config.crystal.depth_cap:
            errors.append("포크 검사 깊이가 상한을 넘습니다")

        # 출력 설정 검증
        if config.output.format not in VALID_FORMATS:
            errors.append(f"지원되지 않는 출력 형식: {config.output.format}")

        # 로깅 설정 검증
        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if config.logging.level not in valid_log_levels:
            errors.append(f"지원되지 않는 로그 레벨: {config.logging.level}")

        # 그래프 설정 검증
        valid_checkpointers = ["memory", "none"]
        if config.graph.checkpointer not in valid_checkpointers:
            errors.append(f"지원되지 않는 체크포인터: {config.graph.checkpointer}")

        self._validated = len(errors) == 0
        return errors

    def is_valid(self) -> bool:
        """설정이 유효한지 확인"""
        if not self._validated:
            errors = self.validate_config()
            return len(errors) == 0
        return True

    def get_summary(self) -> Dict[str, Any]:
        """설정 요약 정보 반환"""
        config = self.config

        return {
            "version": config.version,
            "depth_cap": config.crystal.depth_cap,
            "types": list(config.verify.types),
            "master_depths": dict(config.verify.master_depths),
            "output_format": config.output.format,
            "checkpointer": config.graph.checkpointer,
            "log_level": config.logging.level,
            "validated": self._validated,
        }

    def update_setting(self, path: str, value: Any) -> None:
        """
        런타임에 설정값 업데이트

        Args:
            path: 설정 경로 (예: "crystal.depth_cap")
            value: 새로운 값
        """
        config = self.config
        parts = path.split(".")

        if len(parts) != 2:
            raise ValueError("설정 경로는 'section.key' 형식이어야 합니다")

        section, key = parts

        if not hasattr(config, section):
            raise ValueError(f"존재하지 않는 설정 섹션: {section}")

        section_obj = getattr(config, section)

        if not hasattr(section_obj, key):
            raise ValueError(f"존재하지 않는 설정 키: {section}.{key}")

        setattr(section_obj, key, value)
        self._validated = False  # 재검증 필요

    def export_config_template(self, file_path: str = "crystal.env.template") -> None:
        """
        설정 파일 템플릿 생성

        Args:
            file_path: 템플릿 파일 경로
        """
        template = """# E 타입 결정 검증 도구 설정 (모든 항목 선택)

# 결정 계산 설정
DEPTH_CAP=8
DEFAULT_DEPTH=4
PATTERN_DIR=
TABLE_DIR=
MAX_COLUMN_CLASSES=2000

# 검증 설정
VERIFY_TYPES=E6,E7,E8
MASTER_DEPTH_E6=6
MASTER_DEPTH_E7=6
MASTER_DEPTH_E8=5
FOCK_DEPTH=6
FOCK_TYPES=E6,E7,E8

# 출력 설정
OUTPUT_DIR=./output
OUTPUT_FORMAT=text
SAVE_FILE=false

# 로깅 설정
LOG_LEVEL=INFO
LOG_FILE=

# LangGraph 설정
GRAPH_CHECKPOINTER=memory
GRAPH_DEBUG=false
GRAPH_THREAD_PREFIX=verify_thread
"""

        with open(file_path, "w", encoding="utf-8") as f:
            f.write(template)


# 전역 설정 관리자 인스턴스
_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_file: Optional[str] = None) -> ConfigManager:
    """
    전역 설정 관리자 인스턴스 반환

    Args:
        config_file: 설정 파일 경로

    Returns:
        ConfigManager 인스턴스
    """
    global _config_manager

    if _config_manager is None or (config_file and config_file != _config_manager.config_file):
        _config_manager = ConfigManager(config_file)

    return _config_manager


def get_config(config_file: Optional[str] = None) -> CrystalToolConfig:
    """현재 설정 반환 편의 함수"""
    return get_config_manager(config_file).config


def validate_environment(config_file: Optional[str] = None) -> List[str]:
    """설정 검증 편의 함수"""
    return get_config_manager(config_file).validate_config()


def create_config_template(file_path: str = "crystal.env.template") -> None:
    """설정 템플릿 생성 편의 함수"""
    get_config_manager().export_config_template(file_path)


# 유틸리티 함수들
def ensure_directory(path: Union[str, Path]) -> Path:
    """
    디렉토리 존재 확인 및 생성

    Args:
        path: 디렉토리 경로

    Returns:
        Path 객체
    """
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def get_output_filename(
    prefix: str = "crystal",
    type_tag: Optional[str] = None,
    extension: str = "txt",
) -> str:
    """
    출력 파일명 생성 (같은 입력이면 같은 이름)

    Args:
        prefix: 파일명 접두사
        type_tag: 타입 (E6/E7/E8)
        extension: 파일 확장자

    Returns:
        생성된 파일명
    """
    stem = f"{prefix}_{type_tag.lower()}" if type_tag else prefix
    return f"{stem}.{extension}"
