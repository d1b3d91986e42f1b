from pydantic import BaseModel


def format_as_json(report: BaseModel, *, pretty: bool = True) -> str:
    """Serialize a report; floats keep full precision and key order follows the model."""
    indent = 2 if pretty else None
    json_output: str = report.model_dump_json(indent=indent)
    return json_output
