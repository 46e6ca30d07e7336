from typing import List, Optional

from sqlalchemy import delete, select
from sqlalchemy.orm import Session

from src.models.grid_cell import GridCell
from src.models.inference_record import InferenceRecord


class ExperimentRepository:
    def __init__(self, db: Session):
        self.db = db

    def get_inference(self, digest: str) -> Optional[InferenceRecord]:
        """Get cached inference by digest"""
        result = self.db.execute(
            select(InferenceRecord).where(InferenceRecord.digest == digest)
        )
        return result.scalar_one_or_none()

    def save_inference(self, record_data: dict) -> InferenceRecord:
        """Store an inference outcome, replacing an older one with the same digest"""
        existing = self.get_inference(record_data["digest"])
        if existing:
            for key, value in record_data.items():
                setattr(existing, key, value)
            record = existing
        else:
            record = InferenceRecord(**record_data)
            self.db.add(record)
        self.db.commit()
        self.db.refresh(record)
        return record

    def replace_cells(self, dataset: str, split: float, model: str, cells: List[dict]) -> int:
        """Replace the grid cells of one (dataset, split, model)"""
        self.db.execute(
            delete(GridCell).where(
                GridCell.dataset == dataset, GridCell.split == split, GridCell.model == model
            )
        )
        self.db.add_all(GridCell(**cell) for cell in cells)
        self.db.commit()
        return len(cells)

    def list_cells(self, dataset: Optional[str] = None) -> List[GridCell]:
        """Get recorded grid cells"""
        query = select(GridCell)
        if dataset is not None:
            query = query.where(GridCell.dataset == dataset)
        query = query.order_by(GridCell.dataset, GridCell.split, GridCell.model, GridCell.classifier, GridCell.weights)
        result = self.db.execute(query)
        return result.scalars().all()
