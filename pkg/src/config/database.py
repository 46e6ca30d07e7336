from sqlalchemy import create_engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from src.config.settings import Settings

# Declare the base class for ORM models
Base = declarative_base()


def make_session_factory(url: str = None) -> sessionmaker:
    """Engine and session factory for a run store; tables are created on first use"""
    engine = create_engine(url or Settings.DATABASE_URL, echo=False)
    # register the tables on Base before creating them
    import src.models  # noqa: F401
    Base.metadata.create_all(bind=engine)
    return sessionmaker(bind=engine, class_=Session, expire_on_commit=False)
