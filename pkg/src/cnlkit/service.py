"""Session-oriented HTTP service exposing the full pipeline."""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .lexicon import Lexicon
from .session import Session, SessionError


class CreateSession(BaseModel):
    teller: str
    utc_offset: str = "0"
    speech: bool = False
    # test seam: pin the utterance clock, e.g. "timestamp(2014,6,2,1,3,48)"
    fixed_time: Optional[str] = None


class SubmitBody(BaseModel):
    text: str
    mode: str = Field(default="auto", pattern="^(auto|assert|query|directive)$")
    speech: bool = False


class ChooseBody(BaseModel):
    sentence_ref: str
    index: int


class TracksBody(BaseModel):
    lines: list[str]


class GenerateBody(BaseModel):
    term: str


class PrecheckBody(BaseModel):
    text: str


def create_app(lexicon: Optional[Lexicon] = None) -> FastAPI:
    app = FastAPI(title="cnlkit", version="0.1.0")
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    @app.post("/sessions")
    def create(body: CreateSession):
        if body.speech:
            raise HTTPException(status_code=400, detail="speech input is unsupported")
        clock = None
        if body.fixed_time:
            from .chronos import timestamp_from_term
            from .terms import read_term

            try:
                pinned = timestamp_from_term(read_term(body.fixed_time))
            except Exception as e:
                raise HTTPException(status_code=400, detail=f"bad fixed_time: {e}")
            clock = lambda: pinned
        try:
            session = Session(body.teller, body.utc_offset, lexicon=lexicon, clock=clock)
        except Exception as e:
            raise HTTPException(status_code=400, detail=str(e))
        sessions[session.id] = session
        return {"id": session.id, "teller": session.teller,
                "utc_offset": body.utc_offset}

    @app.post("/sessions/{session_id}/submit")
    def submit(session_id: str, body: SubmitBody):
        if body.speech:
            raise HTTPException(status_code=400, detail="speech input is unsupported")
        session = get_session(session_id)
        try:
            return session.submit(body.text, body.mode)
        except SessionError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @app.post("/sessions/{session_id}/choose")
    def choose(session_id: str, body: ChooseBody):
        session = get_session(session_id)
        try:
            return session.choose(body.sentence_ref, body.index)
        except Exception as e:
            raise HTTPException(status_code=400, detail=str(e))

    @app.get("/sessions/{session_id}/log")
    def log(session_id: str):
        return {"entries": get_session(session_id).log_dicts()}

    @app.post("/sessions/{session_id}/tracks")
    def tracks(session_id: str, body: TracksBody):
        return get_session(session_id).ingest_tracks(body.lines)

    @app.post("/sessions/{session_id}/generate")
    def generate(session_id: str, body: GenerateBody):
        return get_session(session_id).generate_sentence(body.term)

    @app.post("/sessions/{session_id}/precheck")
    def precheck(session_id: str, body: PrecheckBody):
        return get_session(session_id).precheck_text(body.text)

    return app


app = create_app()
