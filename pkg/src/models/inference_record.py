from sqlalchemy import Column, DateTime, Float, Integer, String, Text
from sqlalchemy.sql import func

from src.config.database import Base


class InferenceRecord(Base):
    __tablename__ = "inference_records"

    id = Column(Integer, primary_key=True, index=True)
    digest = Column(String(64), unique=True, nullable=False, index=True)
    dataset = Column(String(100), nullable=False)
    split = Column(Float, nullable=False)
    model = Column(String(20), nullable=False)
    status = Column(String(20), nullable=False)  # found, infeasible, timed_out
    k_used = Column(Integer, nullable=True)
    automaton = Column(Text, nullable=True)  # classification automaton
    reduced_automaton = Column(Text, nullable=True)
    seconds = Column(Float, default=0.0)
    clauses = Column(Integer, default=0)
    variables = Column(Integer, default=0)
    created_at = Column(DateTime(timezone=True), server_default=func.now())
