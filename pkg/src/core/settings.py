from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    LOG_LEVEL: str = "INFO"
    LOG_STRUCTURED: bool = False

    # 조건부 독립성 검정
    CI_ALPHA: float = 0.05
    CI_CORRELATION_CLAMP: float = 1 - 1e-7
    CI_DEGENERATE_TOLERANCE: float = 1e-10

    # 엔트로피 / 우도
    VARIANCE_FLOOR: float = 1e-12
    ENTROPY_BINS: int = 4

    # 검증 위험 재가중치
    PROPENSITY_CLIP_MIN: float = 0.05
    PROPENSITY_CLIP_MAX: float = 0.95
    WEIGHT_CLIP_MIN: float = 0.01
    WEIGHT_CLIP_MAX: float = 100.0
    DEV_VARIANCE_GUARD: float = 1e-12

    MAX_MUTATION_RETRIES: int = 100
    OUTPUT_DIR: str = "out"

    # 순서대로 로드되며, 이후 파일의 값이 우선합니다.
    model_config = SettingsConfigDict(
        env_prefix="ICMS_",
        env_file=("src/env/.env.common", "src/env/.env.local"),
        extra="ignore",
    )


settings = Settings()
