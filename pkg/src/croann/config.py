"""Application configuration with environment support."""

from pathlib import Path
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""
    
    model_config = SettingsConfigDict(
        env_prefix="CROANN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )
    
    # Paths
    out_dir: Path = Field(default=Path("runs"), description="Default directory searched by report")
    data_dir: Path = Field(default=Path("data"), description="Dataset directory used by config init")
    config_dir: Path = Field(default=Path("configs"), description="Shipped experiment configs")
    
    # Execution
    jobs: int = Field(default=1, ge=1, description="Worker processes for trials")
    log_level: str = Field(default="INFO", description="Logging level")

    def resolve_config(self, name: str) -> Path:
        """A config path as given, or a shipped config by name (``iris`` -> configs/iris.conf)."""
        path = Path(name)
        if path.exists():
            return path
        shipped = self.config_dir / f"{name}.conf"
        return shipped if shipped.exists() else path


# Global settings instance
settings = Settings()
