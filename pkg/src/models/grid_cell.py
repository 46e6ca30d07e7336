from sqlalchemy import Column, DateTime, Float, Integer, String, UniqueConstraint
from sqlalchemy.sql import func

from src.config.database import Base


class GridCell(Base):
    __tablename__ = "grid_cells"
    __table_args__ = (UniqueConstraint("dataset", "split", "model", "classifier", "weights"),)

    id = Column(Integer, primary_key=True, index=True)
    dataset = Column(String(100), nullable=False, index=True)
    split = Column(Float, nullable=False)
    model = Column(String(20), nullable=False)
    classifier = Column(String(2), nullable=False)
    weights = Column(Integer, nullable=False)  # 8-bit weight mask
    accuracy = Column(Float, nullable=False)
    f1 = Column(Float, nullable=False)
    tp = Column(Integer, nullable=False)
    tn = Column(Integer, nullable=False)
    fp = Column(Integer, nullable=False)
    fn = Column(Integer, nullable=False)
    seconds = Column(Float, default=0.0)
    created_at = Column(DateTime(timezone=True), server_default=func.now())
