"""HTTP session API for adversarial play.

The human weigher submits one parallel weighing per minute; a worst-case
oracle picks each outcome. Winning requires a forced answer: every
hypothesis still alive must match the accusation, otherwise the adversary
reveals a surviving counter-hypothesis. Sessions live in memory with idle
expiry and per-session serialization; nothing persists across restarts.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import capacity, solve, strategy
from .core import (
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LIGHT,
    PROBLEMS,
    UNLIMITED,
    Hypothesis,
    IllegalWeighing,
    KnowledgeState,
    ParallelWeighing,
    PuzzleConfig,
    apply_outcome,
    classification_counts,
    validate_weighing,
    weighing,
)

ACTIVE = "active"
WON = "won"
LOST = "lost"
FORFEIT = "forfeit"

SESSION_TTL_SECONDS = 3600.0


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _default_adversary(scales: int, budget: int) -> str:
    space = (2 * scales + 1) ** budget
    return solve.EXACT if space <= solve.MAX_OUTCOME_SPACE else solve.GREEDY


def parse_supply(value) -> int | str:
    if value in (UNLIMITED,):
        return UNLIMITED
    if value in ("none", None, 0):
        return 0
    return int(value)


def supply_to_wire(supply: int | str) -> int | str:
    if supply == UNLIMITED:
        return UNLIMITED
    return "none" if supply == 0 else int(supply)


@dataclass
class GameSession:
    """One adversarial game; all mutation happens under ``lock``."""

    id: str
    config: PuzzleConfig
    adversary: str
    optimal_minutes: int | None
    state: KnowledgeState
    history: list[tuple[ParallelWeighing, str]] = field(default_factory=list)
    status: str = ACTIVE
    counterexample: Hypothesis | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    touched: float = field(default_factory=time.monotonic)

    @classmethod
    def create(
        cls,
        config: PuzzleConfig,
        adversary: str | None = None,
        session_id: str | None = None,
    ) -> "GameSession":
        mode = adversary or _default_adversary(config.scales, config.budget)
        if mode not in (solve.EXACT, solve.GREEDY):
            raise ApiError(422, "bad-config", f"unknown adversary mode {mode!r}")
        try:
            optimal = capacity.min_minutes(config)
        except capacity.NeedsSolver:
            optimal = None
        return cls(
            id=session_id or uuid.uuid4().hex,
            config=config,
            adversary=mode,
            optimal_minutes=optimal,
            state=KnowledgeState.fresh(config.coins),
        )

    @property
    def minutes_used(self) -> int:
        return len(self.history)

    @property
    def minutes_left(self) -> int:
        return self.config.budget - self.minutes_used

    def _require_active(self) -> None:
        if self.status != ACTIVE:
            raise ApiError(409, "session-not-active", f"session status is {self.status}")

    def _is_resolved(self) -> bool:
        return solve.resolved(
            solve.state_counts(self.state, self.config.supply), self.config.problem
        )

    def weigh(self, w: ParallelWeighing) -> dict:
        self._require_active()
        if self.minutes_left <= 0:
            raise ApiError(409, "budget-exhausted", "no minutes left to weigh")
        validate_weighing(w, self.config.scales, self.config.coin_limit())
        outcome = solve.worst_outcome(
            self.state,
            w,
            self.minutes_left,
            self.config.problem,
            self.config.supply,
            self.adversary,
        )
        self.state = apply_outcome(self.state, w, outcome)
        self.history.append((w, outcome))
        if self.minutes_left <= 0 and not self._is_resolved():
            self.status = LOST
        return {
            "outcome": outcome,
            "status": self.status,
            "minutes_used": self.minutes_used,
            "minutes_left": self.minutes_left,
            "suspects_remaining": len(self.state.suspect_coins()),
            "hypotheses_remaining": len(self.state.hypotheses),
            "classification": list(self.state.classification()),
            "classification_counts": classification_counts(self.state),
        }

    def answer(self, coin: int, label: str | None) -> dict:
        self._require_active()
        if label is not None and label not in (LIGHT, HEAVY):
            raise ApiError(422, "bad-label", f"label must be light or heavy, got {label!r}")
        if self.config.problem == FIND_AND_LABEL and label is None:
            raise ApiError(422, "label-required", "find-and-label answers need a label")
        counter = None
        for h in sorted(self.state.hypotheses):
            if h.coin != coin:
                counter = h
                break
            if self.config.problem == FIND_AND_LABEL and h.sign != label:
                counter = h
                break
        if counter is None:
            self.status = WON
            verdict = {"verdict": WON, "status": self.status, "counterexample": None}
        else:
            self.status = LOST
            self.counterexample = counter
            verdict = {
                "verdict": LOST,
                "status": self.status,
                "counterexample": {"coin": counter.coin, "sign": counter.sign},
            }
        return verdict

    def hint(self) -> dict:
        self._require_active()
        suggestion = strategy.suggest_weighing(self.state, self.config, self.minutes_left)
        if suggestion is None:
            hyps = sorted(self.state.hypotheses)
            coin = hyps[0].coin
            signs = {h.sign for h in hyps if h.coin == coin}
            label = hyps[0].sign if len(signs) == 1 else None
            return {"weighing": None, "answer": {"coin": coin, "label": label}}
        return {
            "weighing": [
                {"left": sorted(load.left), "right": sorted(load.right)}
                for load in suggestion
            ],
            "answer": None,
        }

    def view(self) -> dict:
        return {
            "id": self.id,
            "coins": self.config.coins,
            "scales": self.config.scales,
            "problem": self.config.problem,
            "supply": supply_to_wire(self.config.supply),
            "budget": self.config.budget,
            "adversary": self.adversary,
            "optimal_minutes": self.optimal_minutes,
            "status": self.status,
            "minutes_used": self.minutes_used,
            "minutes_left": self.minutes_left,
            "suspects_remaining": len(self.state.suspect_coins()),
            "hypotheses_remaining": len(self.state.hypotheses),
            "classification": list(self.state.classification()),
            "classification_counts": classification_counts(self.state),
            "counterexample": (
                {"coin": self.counterexample.coin, "sign": self.counterexample.sign}
                if self.counterexample
                else None
            ),
            "history": [
                {
                    "scales": [
                        {"left": sorted(load.left), "right": sorted(load.right)}
                        for load in w
                    ],
                    "outcome": outcome,
                }
                for w, outcome in self.history
            ],
        }


class SessionStore:
    """Thread-safe in-memory session map with idle expiry."""

    def __init__(self, ttl: float = SESSION_TTL_SECONDS):
        self._lock = threading.RLock()
        self._sessions: dict[str, GameSession] = {}
        self._ttl = ttl

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._evict()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            self._evict()
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(404, "unknown-session", f"no session {session_id!r}")
            session.touched = time.monotonic()
            return session

    def discard(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)

    def _evict(self) -> None:
        now = time.monotonic()
        stale = [sid for sid, s in self._sessions.items() if now - s.touched > self._ttl]
        for sid in stale:
            del self._sessions[sid]


class LoadBody(BaseModel):
    left: list[int]
    right: list[int]


class CreateBody(BaseModel):
    coins: int
    scales: int
    problem: str = JUST_FIND
    supply: int | str = "none"
    adversary: str | None = None
    budget: int | None = None


class WeighBody(BaseModel):
    scales: list[LoadBody]


class AnswerBody(BaseModel):
    coin: int
    label: str | None = None


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="parweigh", docs_url=None, redoc_url=None)
    # the web client is served statically from anywhere (desk-scale tool)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = store or SessionStore()

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(IllegalWeighing)
    async def illegal_weighing_handler(request: Request, exc: IllegalWeighing):
        return JSONResponse(status_code=422, content={"code": exc.code, "message": str(exc)})

    @app.post("/sessions")
    def create_session(body: CreateBody):
        try:
            supply = parse_supply(body.supply)
        except (TypeError, ValueError):
            raise ApiError(422, "bad-config", f"bad supply {body.supply!r}")
        budget = body.budget
        if budget is None:
            try:
                probe = PuzzleConfig(body.coins, body.scales, body.problem, supply, 0)
                budget = capacity.min_minutes(probe)
            except capacity.NeedsSolver:
                budget = None
            except ValueError as exc:
                raise ApiError(422, "bad-config", str(exc))
            if budget is None:
                raise ApiError(
                    422,
                    "budget-required",
                    "no closed-form minute count for this configuration; pass a budget",
                )
        try:
            config = PuzzleConfig(body.coins, body.scales, body.problem, supply, budget)
        except ValueError as exc:
            raise ApiError(422, "bad-config", str(exc))
        session = GameSession.create(config, body.adversary)
        sessions.add(session)
        return session.view()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            return session.view()

    @app.post("/sessions/{session_id}/weigh")
    def submit_weighing(session_id: str, body: WeighBody):
        session = sessions.get(session_id)
        with session.lock:
            w = weighing((load.left, load.right) for load in body.scales)
            return session.weigh(w)

    @app.post("/sessions/{session_id}/answer")
    def submit_answer(session_id: str, body: AnswerBody):
        session = sessions.get(session_id)
        with session.lock:
            return session.answer(body.coin, body.label)

    @app.get("/sessions/{session_id}/hint")
    def get_hint(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            return session.hint()

    @app.delete("/sessions/{session_id}")
    def forfeit_session(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            if session.status == ACTIVE:
                session.status = FORFEIT
            view = session.view()
        sessions.discard(session_id)
        return view

    @app.get("/capacity")
    def get_capacity(
        scales: int,
        minutes: int,
        problem: str = JUST_FIND,
        supply: str = "none",
        potential: str | None = None,
    ):
        try:
            parsed = parse_supply(supply)
            if potential not in (None, "known", "unknown"):
                raise ValueError(f"bad potential {potential!r}")
            return capacity.variant_capacity(
                scales, minutes, problem, parsed, known_potential=potential == "known"
            )
        except capacity.NeedsSolver:
            try:
                return solve.max_coins(scales, minutes, problem, parsed)
            except solve.InstanceTooLarge as exc:
                raise ApiError(422, "instance-too-large", str(exc))
        except ValueError as exc:
            raise ApiError(422, "bad-config", str(exc))

    return app


app = create_app()
