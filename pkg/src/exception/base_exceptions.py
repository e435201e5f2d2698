class IcmsException(Exception):
    """
    모든 도메인 예외의 기본 클래스.
    CLI 예외 핸들러는 exit_code 를 프로세스 종료 코드로 사용한다.
    """

    exit_code: int = 1

    def __init__(self, detail: str = "Unexpected error"):
        super().__init__(detail)
        self.detail = detail


class ConfigException(IcmsException):
    exit_code = 2

    def __init__(self, detail: str = "Invalid configuration"):
        super().__init__(detail=detail)


class DataException(IcmsException):
    exit_code = 3

    def __init__(self, detail: str = "Invalid data"):
        super().__init__(detail=detail)
