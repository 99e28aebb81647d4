import json
import sys
from typing import Any
from pydantic import BaseModel


def success_response(data: Any) -> int:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    sys.stdout.write(json.dumps({"result": data}, default=str) + "\n")
    return 0


def error_response(error: str, error_type: str = "NoisyTRError", exit_code: int = 1) -> int:
    sys.stderr.write(json.dumps({"error": error, "type": error_type}) + "\n")
    return exit_code
