"""Tour the HTTP API with an in-process test client (no server needed).

Run from the repository root:

    python3 demos/03_http_api_tour.py
"""

from pathlib import Path

from fastapi.testclient import TestClient

from fairview.config import EngineConfig
from fairview.engine import Engine
from fairview.service import create_app

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "hotel_comments.jsonl"

engine = Engine.build(EngineConfig(corpus_path=FIXTURE, offline=True))
client = TestClient(create_app(engine))

print("GET /api/ready ->", client.get("/api/ready").json())

sid = client.post("/api/sessions").json()["session_id"]
print("POST /api/sessions ->", sid)

overview = client.get(f"/api/sessions/{sid}/overview").json()
print(f"overview: {len(overview['bins'])} bins, progress {overview['progress']}")

outer = overview["rings"]["outer"]
topic = max(outer, key=lambda a: a["weight"])["topic_id"]
stream = client.get(
    f"/api/sessions/{sid}/stream", params={"topic": topic, "page_size": 3}
).json()
print(f"stream page for {topic}: {stream['comment_ids']} "
      f"(recommended opposite: {stream['recommended_opposite']})")

for cid in stream["comment_ids"]:
    client.post(
        f"/api/sessions/{sid}/events/view", json={"comment_id": cid, "topic_id": topic}
    )
progress = client.get(f"/api/sessions/{sid}/progress", params={"selection": f"topic:{topic}"})
print("progress after 3 views ->", progress.json())

client.post(f"/api/sessions/{sid}/board/thoughts", json={"text": "API round trip works"})
print("\n--- board export (markdown) ---")
print(client.get(f"/api/sessions/{sid}/board/export").text)
