import logging
import os
import time
from contextlib import asynccontextmanager

from dotenv import load_dotenv
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware

from constants import DEFAULT_TOL, FIGURE_IDS
from routes.relaxation_routes import router as relaxation_router

load_dotenv()

SERVICE_HOST = os.getenv("SERVICE_HOST", "127.0.0.1")
SERVICE_PORT = int(os.getenv("SERVICE_PORT", "8000"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
CORS_ORIGINS = [origin.strip() for origin in os.getenv("CORS_ORIGINS", "http://localhost:3000").split(",") if origin.strip()]
API_VERSION = "1.0.0"

# ------------------ Logging ------------------
logger = logging.getLogger("main")
logger.setLevel(LOG_LEVEL)
handler = logging.StreamHandler()
handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
logger.addHandler(handler)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"Relaxation API {API_VERSION} ready, default tol={DEFAULT_TOL:.0e}, cors={CORS_ORIGINS}")
    yield
    logger.info("Relaxation API shutting down")


# ------------------ FastAPI App ------------------
app = FastAPI(title="Fractional Relaxation API", version=API_VERSION, lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/api/health")
def health():
    return {"status": "ok", "version": API_VERSION, "figures": FIGURE_IDS}


# ------------------ Middleware ------------------
@app.middleware("http")
async def log_requests(request: Request, call_next):
    start_time = time.time()
    logger.info(f"Received request: {request.method} {request.url.path}")
    response = await call_next(request)
    processing_time = int((time.time() - start_time) * 1000)
    logger.info(f"Response status: {response.status_code} in {processing_time} ms")
    return response


app.include_router(relaxation_router, prefix="/api", tags=["Relaxation"])

logger.debug("Included routers: %s", [route.path for route in app.routes if hasattr(route, 'path')])

if __name__ == "__main__":
    import uvicorn

    logger.info(f"Starting relaxation service on {SERVICE_HOST}:{SERVICE_PORT}")
    uvicorn.run("main:app", host=SERVICE_HOST, port=SERVICE_PORT, reload=False)
