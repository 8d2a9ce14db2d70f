"""Simulate a reading session: views, marks, both reminder kinds, export.

Run from the repository root:

    python3 demos/02_reading_session.py
"""

from pathlib import Path

from fairview.config import EngineConfig
from fairview.engine import Engine

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "hotel_comments.jsonl"

engine = Engine.build(EngineConfig(corpus_path=FIXTURE, offline=True))
session = engine.create_session()
sid = session.session_id
print(f"session {sid}")

# Pick the smallest topic so the coverage reminder arrives quickly.
topic = min(engine.index.topic_ids(), key=lambda t: len(engine.index.resolve(f"topic:{t}")))
members = engine.index.resolve(f"topic:{topic}")
print(f"reading topic {topic} ({engine.topic_label(topic)}, {len(members)} comments)")

# The stream opens on the contrast pair: similar texts, opposite sentiment.
page = engine.stream_page(sid, topic, cursor=0, page_size=4)
if page["contrast_pair"]:
    a, b = page["contrast_pair"]
    print(f"contrast pair: {a} ({engine.corpus.get(a).sentiment.value}) "
          f"vs {b} ({engine.corpus.get(b).sentiment.value})")

# Scroll through everything; the one-shot coverage reminder fires at 70%.
for cid in members:
    result = engine.record_view(sid, cid, topic)
    for reminder in result["reminders"]:
        print(f"> coverage reminder after {reminder['grounding']['viewed']} views:")
        print(f"  {reminder['suggestion']}")
        engine.resolve_reminder(sid, reminder["reminder_id"], "add", "time to move on")

# Mark a few negative comments useful; the balance reminder pushes back.
# A comment can sit in several topics, and each topic arms independently.
negatives = [c for c in members if engine.corpus.get(c).sentiment.value == "negative"]
for cid in negatives[:3]:
    result = engine.mark_useful(sid, cid, True)
    for reminder in result["reminders"]:
        label = engine.topic_label(reminder["trigger"]["topic_id"])
        print(f"> balance reminder on {label} "
              f"(deviation {reminder['grounding']['delta_p']:.2f}):")
        print(f"  {reminder['suggestion']}")
        engine.resolve_reminder(sid, reminder["reminder_id"], "dismiss")

# Evidence snippet + instant thought, then the exported board.
first = members[0]
engine.save_snippet(sid, first, 0, min(20, len(engine.corpus.get(first).text.encode())))
engine.add_thought(sid, "mixed reports; noise complaints dominate the negatives")

print("\n--- exported board ---")
print(engine.export_board(sid, "markdown"))
