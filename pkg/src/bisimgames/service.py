"""HTTP session service: play either game role against the optimal engine.

Sessions are in-memory with a TTL and no persistence. Every response
embeds the full verdict (region membership and remaining rank) so the
interface never pretends a lost game is open, plus the DOT of the
explored game region; once the challenger has won, the apartness proof
for the decisive pair is attached. Error bodies are ``{code, message}``.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import fixtures
from .games import (BRANCHING, DUPLICATOR, SPOILER, STRONG, GameGraph,
                    SpoilerPair, DuplicatorChallenge, build_branching_game,
                    build_strong_game, describe_config, describe_move, owner)
from .lts import Lts, LtsError, parse_aut
from .proofs import proof_to_json, strategy_to_proof
from .render import render_game_dot
from .solver import Solution, solve

IN_PROGRESS = "in_progress"
SPOILER_WON = "spoiler_won"
DUPLICATOR_WON = "duplicator_won"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateSessionRequest(BaseModel):
    kind: Literal["strong", "branching"] = STRONG
    human_role: Literal["spoiler", "duplicator"] = SPOILER
    start: tuple[str, str]
    aut: Optional[str] = None
    fixture: Optional[str] = None
    tau_labels: tuple[str, ...] = ("tau", "i")


class MoveRequest(BaseModel):
    move: int


@dataclass
class HistoryEntry:
    mover: str
    source: int
    target: int
    description: str


@dataclass
class Session:
    id: str
    lts: Lts
    kind: str
    human_role: str
    game: GameGraph
    solution: Solution
    current: int
    start: int
    status: str = IN_PROGRESS
    status_reason: str = ""
    rounds: int = 0
    history: list[HistoryEntry] = field(default_factory=list)
    seen: set[int] = field(default_factory=set)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)

    @property
    def engine_role(self) -> str:
        return DUPLICATOR if self.human_role == SPOILER else SPOILER


def _engine_choice(session: Session) -> int:
    """The engine's move: its winning strategy inside its region, and the
    move maximising the opponent's remaining rank (stalling) outside."""
    game, sol = session.game, session.solution
    i = session.current
    if session.engine_role == SPOILER and i in sol.spoiler_region:
        return sol.spoiler_strategy.moves[i]
    if session.engine_role == DUPLICATOR and i in sol.duplicator_region:
        return sol.duplicator_strategy.moves[i]
    inf = float("inf")
    return min(game.moves[i], key=lambda j: (-sol.rank.get(j, inf), j))


def _update_status(session: Session) -> None:
    if session.status != IN_PROGRESS:
        return
    game, sol = session.game, session.solution
    cur = session.current
    cfg = game.configs[cur]
    if not game.moves[cur]:
        if owner(cfg) == DUPLICATOR:
            session.status = SPOILER_WON
            session.status_reason = "the mimic has no reply"
        else:
            session.status = DUPLICATOR_WON
            session.status_reason = "the challenger has no move"
        return
    # finite stand-in for "infinite plays favour the mimic"
    if session.rounds > len(game.configs):
        session.status = DUPLICATOR_WON
        session.status_reason = "round limit exceeded; declared safe"
        return
    if (session.engine_role == SPOILER and cur not in sol.spoiler_region
            and cur in session.seen):
        session.status = DUPLICATOR_WON
        session.status_reason = "configuration repeated outside the challenger region"
        return
    session.seen.add(cur)


def _apply_move(session: Session, target: int, mover: str) -> None:
    game = session.game
    src = session.current
    if isinstance(game.configs[src], SpoilerPair):
        session.rounds += 1
    session.history.append(HistoryEntry(
        mover=mover, source=src, target=target,
        description=describe_move(game, src, target)))
    session.current = target
    _update_status(session)


def _run_engine(session: Session) -> None:
    while (session.status == IN_PROGRESS
           and owner(session.game.configs[session.current]) == session.engine_role):
        _apply_move(session, _engine_choice(session), "engine")


def _config_doc(game: GameGraph, i: int) -> dict:
    cfg = game.configs[i]
    lts = game.lts
    doc = {"index": i, "owner": owner(cfg), "text": describe_config(cfg, lts)}
    if isinstance(cfg, SpoilerPair):
        doc.update(kind="pair", x=lts.state_name(cfg.x), y=lts.state_name(cfg.y))
    elif isinstance(cfg, DuplicatorChallenge):
        doc.update(kind="challenge", x=lts.state_name(cfg.x), label=cfg.label,
                   x_new=lts.state_name(cfg.x_new), y=lts.state_name(cfg.y))
    else:
        doc.update(kind="quint", x=lts.state_name(cfg.x), x_new=lts.state_name(cfg.x_new),
                   y=lts.state_name(cfg.y), y_mid=lts.state_name(cfg.y_mid),
                   y_new=lts.state_name(cfg.y_new))
    return doc


def _summary(session: Session) -> dict:
    game, sol, lts = session.game, session.solution, session.lts
    cur = session.current
    humans_turn = (session.status == IN_PROGRESS
                   and owner(game.configs[cur]) == session.human_role)
    legal = []
    if humans_turn:
        legal = [
            {"index": k, "to": _config_doc(game, j),
             "description": describe_move(game, cur, j)}
            for k, j in enumerate(game.moves[cur])
        ]
    proof = None
    if session.status == SPOILER_WON:
        # earliest challenger-winning pair along the play: the point from
        # which the win was forced (the start pair, unless the mimic's
        # player blundered into the challenger region later)
        base = next((i for i in [session.start]
                     + [h.target for h in session.history]
                     if isinstance(game.configs[i], SpoilerPair)
                     and i in sol.spoiler_region), None)
        if base is not None:
            proof = proof_to_json(strategy_to_proof(game, sol, base), lts)
    return {
        "id": session.id,
        "kind": session.kind,
        "human_role": session.human_role,
        "status": session.status,
        "status_reason": session.status_reason,
        "round": session.rounds,
        "start": _config_doc(game, session.start),
        "start_in_spoiler_region": session.start in sol.spoiler_region,
        "current": _config_doc(game, cur),
        "current_in_spoiler_region": cur in sol.spoiler_region,
        "rank": sol.rank.get(cur),
        "humans_turn": humans_turn,
        "legal_moves": legal,
        "history": [
            {"mover": h.mover, "from": _config_doc(game, h.source),
             "to": _config_doc(game, h.target), "description": h.description}
            for h in session.history
        ],
        "lts": {
            "states": list(lts.names),
            "labels": list(lts.labels),
            "tau": lts.tau,
            "initial": lts.initial,
            "transitions": sorted(
                [lts.state_name(s), lab, lts.state_name(t)]
                for s, lab, t in lts.transitions),
        },
        "dot": render_game_dot(game),
        "proof": proof,
    }


def create_app(ttl_seconds: float = 3600.0, ui_dir: str | None = None) -> FastAPI:
    """The service app; ``ui_dir`` optionally mounts a built web client at
    the root so API and UI share an origin."""
    app = FastAPI(title="bisimgames session service")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def purge():
        now = time.monotonic()
        with registry_lock:
            for sid in [s for s, v in sessions.items()
                        if now - v.last_access > ttl_seconds]:
                del sessions[sid]

    def get_session(session_id: str) -> Session:
        purge()
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        session.last_access = time.monotonic()
        return session

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "malformed_request", "message": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        purge()
        if (req.aut is None) == (req.fixture is None):
            raise ApiError(400, "malformed_request",
                           "provide exactly one of 'aut' or 'fixture'")
        if req.fixture is not None:
            text = fixtures.BUILTIN.get(req.fixture)
            if text is None:
                raise ApiError(422, "unknown_fixture",
                               f"unknown fixture {req.fixture!r}; "
                               f"available: {sorted(fixtures.BUILTIN)}")
        else:
            text = req.aut
        try:
            lts = parse_aut(text, tau_names=req.tau_labels)
            x = lts.state_index(req.start[0])
            y = lts.state_index(req.start[1])
        except LtsError as e:
            raise ApiError(422, "invalid_system", str(e)) from None
        build = build_strong_game if req.kind == STRONG else build_branching_game
        game = build(lts, [(x, y)])
        session = Session(
            id=secrets.token_hex(8), lts=lts, kind=req.kind,
            human_role=req.human_role, game=game, solution=solve(game),
            current=game.index_of(SpoilerPair(x, y)),
            start=game.index_of(SpoilerPair(x, y)),
        )
        _update_status(session)
        _run_engine(session)
        with registry_lock:
            sessions[session.id] = session
        return _summary(session)

    @app.get("/sessions/{session_id}")
    def get_summary(session_id: str):
        return _summary(get_session(session_id))

    @app.post("/sessions/{session_id}/moves")
    def play_move(session_id: str, req: MoveRequest):
        session = get_session(session_id)
        with session.lock:
            if session.status != IN_PROGRESS:
                raise ApiError(409, "game_over", f"session is {session.status}")
            cur = session.current
            if owner(session.game.configs[cur]) != session.human_role:
                raise ApiError(409, "not_your_turn", "waiting for the engine")
            moves = session.game.moves[cur]
            if not 0 <= req.move < len(moves):
                raise ApiError(422, "invalid_move",
                               f"move index {req.move} out of range 0..{len(moves) - 1}")
            _apply_move(session, moves[req.move], "human")
            _run_engine(session)
            return _summary(session)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        get_session(session_id)
        with registry_lock:
            sessions.pop(session_id, None)
        return {"deleted": session_id}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


app = create_app()
