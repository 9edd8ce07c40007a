"""
エラーハンドリングユーティリティ
"""
import logging
import traceback
import sys
from typing import Dict, Any, Optional, Callable
from datetime import datetime
import uuid
from functools import wraps

from fanoblow.config.settings import get_settings
from fanoblow.models.scenario import ScenarioError, ScenarioSpecError
from fanoblow.utils.serialization import SerializationError

logger = logging.getLogger(__name__)

# 終了コード
EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2

EXIT_CODES = {
    "PARSE_ERROR": EXIT_USAGE,
    "VALIDATION_ERROR": EXIT_USAGE,
    "CHECK_FAILURE": EXIT_CHECK_FAILURE,
    "PROCESSING_ERROR": EXIT_CHECK_FAILURE,
}


class ErrorResponse:
    """
    エラーレスポンス
    """
    def __init__(
        self,
        error_code: str,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        correlation_id: Optional[str] = None
    ):
        self.error_code = error_code
        self.message = message
        self.details = details or {}
        self.timestamp = datetime.now()
        self.correlation_id = correlation_id or str(uuid.uuid4())

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.error_code, EXIT_CHECK_FAILURE)

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message} (ID: {self.correlation_id})"


class ErrorHandler:
    """
    エラーハンドリングユーティリティ
    """
    def __init__(self):
        self.settings = get_settings()

    def _debug_enabled(self) -> bool:
        return self.settings.log_level.upper() == "DEBUG"

    def handle_parse_error(self, error: Exception) -> ErrorResponse:
        """
        シナリオ記述の解析エラーを処理

        Args:
            error: 発生した例外（line, column 属性を持つ場合は詳細に含める）

        Returns:
            エラーレスポンス
        """
        details = {
            "error_type": error.__class__.__name__,
            "line": getattr(error, "line", None),
            "column": getattr(error, "column", None),
        }
        logger.warning(f"Parse Error: {str(error)}")
        return ErrorResponse("PARSE_ERROR", f"解析エラー: {str(error)}", details)

    def handle_validation_error(self, error: Exception, field: str) -> ErrorResponse:
        """
        バリデーションエラーを処理

        Args:
            error: 発生した例外
            field: バリデーションエラーが発生したフィールド

        Returns:
            エラーレスポンス
        """
        error_code = "VALIDATION_ERROR"
        message = f"バリデーションエラー: {str(error)}"

        details = {
            "field": field,
            "error_type": error.__class__.__name__
        }

        logger.warning(f"Validation Error in field '{field}': {str(error)}")

        return ErrorResponse(error_code, message, details)

    def handle_processing_error(self, error: Exception, data: Any) -> ErrorResponse:
        """
        計算中のエラーを処理

        Args:
            error: 発生した例外
            data: 処理中のデータ

        Returns:
            エラーレスポンス
        """
        error_code = "PROCESSING_ERROR"
        message = f"計算中にエラーが発生しました: {str(error)}"

        # スタックトレースを取得
        stack_trace = traceback.format_exception(type(error), error, error.__traceback__)

        details = {
            "error_type": error.__class__.__name__,
            "stack_trace": stack_trace if self._debug_enabled() else None
        }

        logger.error(f"Processing Error: {str(error)}")
        logger.debug("".join(stack_trace))

        return ErrorResponse(error_code, message, details)

    def handle_check_failure(self, failed: Dict[str, str]) -> ErrorResponse:
        """
        検証の失敗を処理

        Args:
            failed: 失敗した検証名とメッセージ

        Returns:
            エラーレスポンス
        """
        message = f"{len(failed)} 件の検証が失敗しました"
        logger.error(f"Check Failure: {', '.join(failed)}")
        return ErrorResponse("CHECK_FAILURE", message, {"failed": failed})

    def notify_critical_error(self, error: ErrorResponse) -> None:
        """
        重大なエラーを標準エラー出力に通知

        Args:
            error: エラーレスポンス
        """
        print(f"error: {error}", file=sys.stderr)
        line, column = error.details.get("line"), error.details.get("column")
        if line is not None and column is not None:
            print(f"  at line {line}, column {column}", file=sys.stderr)


def error_handler(func: Callable[..., int]) -> Callable[..., int]:
    """
    CLI コマンド用のエラーハンドリングデコレータ

    解析エラーは PARSE_ERROR、領域外のパラメータと出力形式の誤りは VALIDATION_ERROR、
    それ以外の例外は PROCESSING_ERROR とし、
    対応する終了コードを返す。

    Args:
        func: 終了コードを返すコマンド関数

    Returns:
        デコレートされた関数
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except Exception as e:
            handler = ErrorHandler()
            # ScenarioSpecError は ScenarioError の派生なので先に判定する
            if isinstance(e, ScenarioSpecError):
                error_response = handler.handle_parse_error(e)
            elif isinstance(e, (ScenarioError, SerializationError)):
                error_response = handler.handle_validation_error(e, func.__name__)
            else:
                error_response = handler.handle_processing_error(e, {"args": args, "kwargs": kwargs})
            handler.notify_critical_error(error_response)
            return error_response.exit_code

    return wrapper
