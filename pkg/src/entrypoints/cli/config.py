from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings, case_sensitive=False):
    log_level: str = "warning"
    workers: int = Field(default=1, ge=1)
    max_horizon: int = 9
    max_board_size: int = 6

    model_config = SettingsConfigDict(env_prefix="POP_")


settings = Settings()
