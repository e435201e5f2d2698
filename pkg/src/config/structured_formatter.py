import logging

# LogRecord 가 기본으로 갖는 속성들 (extra 로 넘어온 값만 골라내기 위해 사용)
_RESERVED = set(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}


class StructuredFormatter(logging.Formatter):
    """
    logger.info(..., extra={...}) 로 전달된 필드를 메시지 뒤에 key=value 형태로 붙인다.
    키는 정렬해서 출력하므로 같은 실행은 같은 로그 라인을 만든다.
    """

    def format(self, record):
        message = super().format(record)
        fields = {k: v for k, v in vars(record).items() if k not in _RESERVED}
        if not fields:
            return message
        rendered = " ".join(f"{key}={self._render(value)}" for key, value in sorted(fields.items()))
        return f"{message} | {rendered}"

    @staticmethod
    def _render(value) -> str:
        if isinstance(value, float):
            return f"{value:.6g}"
        return str(value)
