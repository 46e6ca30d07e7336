from src.models.grid_cell import GridCell
from src.models.inference_record import InferenceRecord

__all__ = ["GridCell", "InferenceRecord"]
