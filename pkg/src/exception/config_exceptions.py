from src.exception.base_exceptions import ConfigException


class InvalidConfigException(ConfigException):
    def __init__(self, detail: str = "Configuration is invalid"):
        super().__init__(detail=detail)


class ConfigFileNotFoundException(ConfigException):
    def __init__(self, path):
        super().__init__(detail=f"Config file not found: {path}")
