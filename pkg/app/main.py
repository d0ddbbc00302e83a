from fastapi import FastAPI

from app import config
from app.api import compute, verify

config.configure_logging()

app = FastAPI(title="QSymm workbench")

# include routers
app.include_router(compute.router)
app.include_router(verify.router)
