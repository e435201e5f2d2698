import logging

import click
from pydantic import ValidationError

from src.dto.response.common_response_dto import CommonResponseDto
from src.exception.base_exceptions import IcmsException

logger = logging.getLogger(__name__)

CONFIG_ERROR_EXIT_CODE = 2
UNEXPECTED_ERROR_EXIT_CODE = 1


def _emit_error(message: str) -> None:
    """실패 응답을 공통 응답 포맷으로 stderr 에 기록"""
    envelope = CommonResponseDto(status="error", data=None, message=message)
    click.echo(envelope.model_dump_json(), err=True)


def register_exception_handlers(cli: click.Group) -> None:
    """CLI 그룹에 전역 예외 핸들러를 등록하는 함수"""
    original_invoke = cli.invoke

    def invoke(ctx: click.Context):
        try:
            return original_invoke(ctx)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            # click 자체의 종료/사용법 오류는 그대로 전달
            raise
        except IcmsException as exc:
            logger.error(f"{type(exc).__name__}: {exc.detail}")
            _emit_error(exc.detail)
            ctx.exit(exc.exit_code)
        except ValidationError as exc:
            # 유효성 검사 오류 처리 (예: 설정 파일 오류)
            errors = "; ".join(
                f"{'.'.join(map(str, err.get('loc', [])))}: {err.get('msg')}" for err in exc.errors()
            )
            logger.error(f"Invalid configuration: {errors}")
            _emit_error(errors)
            ctx.exit(CONFIG_ERROR_EXIT_CODE)
        except Exception as exc:
            logger.exception(f"Unhandled error: {exc}")
            _emit_error(str(exc) or type(exc).__name__)
            ctx.exit(UNEXPECTED_ERROR_EXIT_CODE)

    cli.invoke = invoke
